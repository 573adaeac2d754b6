from fractions import Fraction as Q

import pytest

from markovsum import catalog
from markovsum.catalog import (
    CatalogError,
    FormulaEntry,
    RatioBound,
    entry_apery,
    entry_az_zeta3,
    entry_direct,
    entry_kummer,
    entry_markov_hurwitz,
    entry_phi32_series,
    entry_phi32_transformed,
    entry_ratio27_zeta3,
    entry_schellbach_zeta2,
    entry_zeta2_27,
    evaluate,
    get_entry,
    parse_reports_csv,
    reports_to_csv,
    terms_needed,
)
from markovsum.exact import ROUND_HALF_EVEN, parse_decimal
from markovsum.hgterm import TermSequence

CANONICAL = (Q(1, 3), Q(1, 5), Q(1, 7), Q(1, 11), Q(1, 2))


class TestAperyEntry:
    def test_first_term(self):
        assert entry_apery().term(1) == Q(5, 4)

    def test_partial_sum(self):
        e = entry_apery()
        assert e.term(1) + e.term(2) == Q(115, 96)

    def test_certified(self):
        e = entry_apery()
        assert e.ratio_certified
        assert e.ratio_bound == RatioBound(Q(1, 4), 1)

    def test_one_term_enclosure_brackets_limit(self):
        report = evaluate(entry_apery(), 1)
        assert report.enclosure.contains(parse_decimal("1.202056903"))


class TestMarkovHurwitzEntry:
    def test_a1_first_term(self):
        assert entry_markov_hurwitz(Q(1)).term(0) == Q(5, 4)

    def test_a1_second_term(self):
        assert entry_markov_hurwitz(Q(1)).term(1) == Q(-5, 96)

    def test_termwise_specialization(self):
        hurwitz = entry_markov_hurwitz(Q(1))
        apery = entry_apery()
        for n in range(33):
            assert hurwitz.term(n) == apery.term(n + 1)

    def test_pole_rejected(self):
        with pytest.raises(CatalogError, match="pole in a"):
            entry_markov_hurwitz(Q(-3))

    def test_half_parameter_agrees_with_direct_sum(self):
        # zeta(3, 1/2) cross-oracle: accelerated vs direct with integral tail
        accelerated = evaluate(entry_markov_hurwitz(Q(1, 2)), 40)
        direct = evaluate(entry_direct("hurwitz3", Q(1, 2)), 600)
        assert accelerated.digits_proven >= 20
        lo, hi = direct.enclosure.lower, direct.enclosure.upper
        assert not (accelerated.enclosure.upper < lo or accelerated.enclosure.lower > hi)


class TestRatio27Entry:
    def test_first_terms(self):
        e = entry_ratio27_zeta3()
        assert e.term(1) == Q(29, 24)
        assert e.term(2) == Q(-11, 1728)

    def test_thirteen_terms_give_twenty_decimals(self):
        report = evaluate(entry_ratio27_zeta3(), 13)
        assert report.digits_proven >= 20

    def test_certified(self):
        assert entry_ratio27_zeta3().ratio_certified


class TestAZEntry:
    def test_first_terms(self):
        e = entry_az_zeta3()
        assert e.term(0) == Q(77, 64)
        assert e.term(1) == Q(-(205 + 250 + 77), 64 * 6 ** 5)

    def test_thirty_digit_agreement_with_apery(self):
        az = evaluate(entry_az_zeta3(), terms_needed(entry_az_zeta3(), 30))
        ap = evaluate(entry_apery(), terms_needed(entry_apery(), 30))
        assert az.digits_proven >= 30 and ap.digits_proven >= 30
        assert az.rendering.fraction_digits[:30] == ap.rendering.fraction_digits[:30]


class TestZeta227Entry:
    def test_first_terms(self):
        e = entry_zeta2_27()
        assert e.term(1) == Q(-83, 3780)
        assert e.term(2) == Q(27 * 55, 10395 * 624)

    def test_offset(self):
        assert entry_zeta2_27().offset == Q(5, 3)

    def test_agreement_with_schellbach(self):
        z27 = evaluate(entry_zeta2_27(), terms_needed(entry_zeta2_27(), 25))
        sch = evaluate(entry_schellbach_zeta2(), terms_needed(entry_schellbach_zeta2(), 25))
        assert z27.digits_proven >= 25 and sch.digits_proven >= 25
        assert z27.rendering.fraction_digits[:25] == sch.rendering.fraction_digits[:25]


class TestDirectEntries:
    def test_zeta3_partial(self):
        e = entry_direct("zeta3")
        assert e.term(1) + e.term(2) == Q(9, 8)

    def test_eta3_terms(self):
        e = entry_direct("eta3")
        assert e.term(1) == 1
        assert e.term(2) == Q(-1, 8)

    def test_hurwitz_shift(self):
        h = entry_direct("hurwitz3", Q(1))
        z = entry_direct("zeta3")
        for n in range(20):
            assert h.term(n) == z.term(n + 1)

    def test_hurwitz_needs_positive_a(self):
        with pytest.raises(CatalogError):
            entry_direct("hurwitz3", Q(-1, 2))

    def test_unknown_kind(self):
        with pytest.raises(CatalogError):
            entry_direct("zeta5")

    def test_integral_bound_brackets(self):
        report = evaluate(entry_direct("zeta3"), 400)
        assert report.enclosure.contains(parse_decimal("1.2020569"))
        assert report.digits_proven >= 4


class TestKummerEntry:
    def test_first_terms(self):
        e = entry_kummer()
        assert e.term(0) == 1
        assert e.term(1) == Q(729, 1000)

    def test_ratio_tends_to_one(self):
        e = entry_kummer()
        r10 = e.term(11) / e.term(10)
        r100 = e.term(101) / e.term(100)
        assert Q(8, 10) < r10 < 1
        assert Q(97, 100) < r100 < 1

    def test_flagged_slow_with_no_geometric_bound(self):
        e = entry_kummer()
        assert e.slow and e.ratio_bound is None
        with pytest.raises(CatalogError, match="no geometric bound"):
            terms_needed(e, 3)

    def test_enclosure_contains_reference(self):
        # 9.04658676497... is an independently computed reference value for
        # this sum; the 300-term enclosure is wide (~1.3) but must contain it
        report = evaluate(entry_kummer(), 300)
        assert report.enclosure.contains(parse_decimal("9.0465867"))
        assert report.enclosure.width < 2


class TestPhi32Entries:
    def test_both_sides_agree_to_twenty_digits(self):
        lhs = entry_phi32_series(*CANONICAL)
        rhs = entry_phi32_transformed(*CANONICAL)
        r1 = evaluate(lhs, 60)
        r2 = evaluate(rhs, 9)
        assert r1.digits_proven >= 20 and r2.digits_proven >= 20
        assert r1.rendering.fraction_digits[:20] == r2.rendering.fraction_digits[:20]
        assert r1.rendering.integer_part == r2.rendering.integer_part

    def test_source_ratio_bound_is_t(self):
        lhs = entry_phi32_series(*CANONICAL)
        assert lhs.ratio_bound.rho == Q(30, 77)

    def test_conditions_enforced(self):
        # t = 5/11 < 1 but c > a, outside the certified ordering regime
        with pytest.raises(CatalogError):
            entry_phi32_series(Q(1, 5), Q(1, 2), Q(1, 4), Q(1, 11), Q(1, 2))


class TestEvaluate:
    def test_rejects_zero_terms(self):
        with pytest.raises(CatalogError):
            evaluate(entry_apery(), 0)

    def test_enclosures_share_the_limit(self):
        e = entry_apery()
        previous = evaluate(e, 2).enclosure
        for n in range(3, 24):
            current = evaluate(e, n).enclosure
            assert current.lower <= previous.upper and previous.lower <= current.upper
            previous = current

    def test_alternating_bound_tighter_than_geometric(self):
        e = entry_apery()
        n = 10
        report = evaluate(e, n)
        geometric = abs(e.term(n + 1)) / (1 - Q(1, 4))
        assert report.enclosure.width <= geometric

    def test_vanishing_tail_gives_point_enclosure(self):
        entry = FormulaEntry(
            "finite", "other", "terms vanish past n = 5",
            TermSequence.from_term(lambda n: Q(1, 2 ** n) if n <= 5 else Q(0)),
            ratio_bound=RatioBound(Q(1, 2), 0), remainder_nonneg=True)
        report = evaluate(entry, 10)
        assert report.enclosure.width == 0
        assert report.enclosure.lower == sum(Q(1, 2 ** n) for n in range(6))

    def test_registration_rejects_bad_ratio(self):
        with pytest.raises(CatalogError, match="ratio bound"):
            FormulaEntry(
                "bogus", "zeta3", "ratio claimed too small",
                TermSequence.from_term(lambda n: Q(1, 2) ** n),
                ratio_bound=RatioBound(Q(1, 3), 0))

    def test_registration_rejects_wrong_alternation(self):
        with pytest.raises(CatalogError, match="alternate"):
            FormulaEntry(
                "bogus", "zeta3", "not alternating",
                TermSequence.from_term(lambda n: Q(1, 2) ** n),
                alternating=True)


class TestTermsNeeded:
    def test_zero_digits(self):
        assert terms_needed(entry_apery(), 0) == 1

    def test_apery_scan_values(self):
        # frozen from the implementation's exact scan; the alternating
        # bracket is tighter than the pure 1/4-geometric estimate
        assert terms_needed(entry_apery(), 33) == 49
        assert terms_needed(entry_apery(), 33, rounding=ROUND_HALF_EVEN) == 48

    def test_ratio27_twenty_digits(self):
        assert terms_needed(entry_ratio27_zeta3(), 20) <= 13

    def test_consistent_with_evaluate(self):
        for digits in (5, 12, 20):
            e = entry_az_zeta3()
            n = terms_needed(e, digits)
            assert evaluate(e, n, digits=digits).digits_proven >= digits
            if n > 1:
                assert evaluate(e, n - 1, digits=digits).digits_proven < digits


class TestRegistryAndReports:
    def test_get_entry_unknown(self):
        with pytest.raises(KeyError):
            get_entry("nosuch")

    def test_parameter_only_where_allowed(self):
        with pytest.raises(CatalogError):
            get_entry("apery", a=Q(2))

    def test_listing_covers_registry(self):
        rows = catalog.list_entries()
        assert {r["entry"] for r in rows} == set(catalog.REGISTRY)

    def test_csv_round_trip(self):
        reports = [evaluate(entry_apery(), 10), evaluate(entry_direct("zeta3"), 50)]
        text = reports_to_csv(reports)
        rows = parse_reports_csv(text)
        assert [r["entry"] for r in rows] == ["apery", "zeta3-direct"]
        assert rows[0]["ratio_bound"] == Q(1, 4)
        assert rows[0]["terms_used"] == 10
        assert rows[0]["digits_proven"] == reports[0].digits_proven
        assert rows[0]["rendering"] == str(reports[0].rendering)

    def test_json_schema_field(self):
        payload = evaluate(entry_apery(), 5).to_json()
        assert payload["schema"] == "1"
        assert "/" in payload["enclosure"]["lower"]

    def test_cross_formula_agreement(self):
        for constant, ids in catalog.CONSTANT_GROUPS.items():
            reports = []
            for entry_id in ids:
                entry = get_entry(entry_id)
                n = terms_needed(entry, 20) if entry.ratio_bound else 400
                reports.append(evaluate(entry, n))
            for i in range(len(reports)):
                for j in range(i + 1, len(reports)):
                    shared = min(reports[i].digits_proven, reports[j].digits_proven)
                    asides = reports[i].rendering.fraction_digits[:shared]
                    bsides = reports[j].rendering.fraction_digits[:shared]
                    assert asides == bsides, (constant, i, j)
