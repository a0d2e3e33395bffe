from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from collabmap import errors
from collabmap.corpus import load_corpus
from collabmap.indicators import (
    LEVEL_SDS,
    LEVEL_UDA,
    YearRanks,
    article_ifpr,
    build_rank_index,
    if_percentile_ranks,
    ifpr_by_publication,
    midrank_percentiles,
    multidisc_by_scope,
    multidisc_sci,
    multidisc_sds,
    publications_by_category,
    publications_by_sector,
    rank_within_sector,
    researcher_fss,
    researcher_output,
    researcher_performance,
    sector_headcounts,
    sector_intensity,
    sectors_of_publication,
)

A = Fraction(1, 6)
B = Fraction(3, 8)
G = Fraction(25, 36)

FSS_EXPECTED = {
    "RES-E1": A / 2 + A + B / 2,
    "RES-E2": B / 3 + B / 2,
    "RES-E3": B / 3 + G,
    "RES-E4": G / 4,
    "RES-E5": A / 2,
    "RES-E6": B / 2,
    "RES-E7": B / 2 + A / 2,
    "RES-E8": G + A / 2,
    "RES-M1": A + A + B / 2 + B / 2 + B,
    "RES-M2": B / 2 + G + B / 2 + B,
    "RES-C1": B / 4 + B + A / 2 + G / 2 + B / 3,
    "RES-C2": G + A / 2 + G + A + B / 3,
    "RES-C3": A + B + A + G / 2 + G,
    "RES-B1": B / 4 + G + G / 2 + A + A / 2,
    "RES-B2": A + G / 2 + B + B / 2,
    "RES-B3": A + B + G + G / 2 + A / 2 + B / 3,
}

OUTPUT_EXPECTED = {
    "RES-E1": 3, "RES-E2": 2, "RES-E3": 2, "RES-E4": 1, "RES-E5": 1,
    "RES-E6": 1, "RES-E7": 2, "RES-E8": 2, "RES-M1": 5, "RES-M2": 4,
    "RES-C1": 5, "RES-C2": 5, "RES-C3": 5, "RES-B1": 5, "RES-B2": 4,
    "RES-B3": 6,
}

O_RANK_EXPECTED = {
    "RES-E1": 93.75, "RES-E2": 62.5, "RES-E3": 62.5, "RES-E4": 18.75,
    "RES-E5": 18.75, "RES-E6": 18.75, "RES-E7": 62.5, "RES-E8": 62.5,
    "RES-M1": 75.0, "RES-M2": 25.0, "RES-C1": 50.0, "RES-C2": 50.0,
    "RES-C3": 50.0, "RES-B1": 75.0, "RES-B2": 25.0, "RES-B3": 50.0,
}

FSS_RANK_EXPECTED = {
    "RES-E1": 68.75, "RES-E2": 56.25, "RES-E3": 93.75, "RES-E4": 18.75,
    "RES-E5": 6.25, "RES-E6": 31.25, "RES-E7": 43.75, "RES-E8": 81.25,
    "RES-M1": 25.0, "RES-M2": 75.0, "RES-C1": 25.0, "RES-C2": 75.0,
    "RES-C3": 50.0, "RES-B1": 75.0, "RES-B2": 25.0, "RES-B3": 50.0,
}


def _tiny_corpus(tmp_path, extra_pub_lines=()):
    d = tmp_path / "tiny"
    d.mkdir()
    (d / "taxonomy.csv").write_text(
        "sds_id,sds_name,uda_id,uda_name\nSDS1,Solo sector,UDA1,Solo area\n",
        encoding="utf-8")
    (d / "organizations.csv").write_text(
        "org_id,canonical_name,kind,country\n"
        "UNI-A,Uni A,university,IT\n"
        "FRM-X,Firm X,private_firm,IT\n",
        encoding="utf-8")
    (d / "journals.csv").write_text(
        "journal_id,name,year,impact_factor,sci_categories\n"
        "JRN-A,Journal A,2002,1.000,CAT-A\n",
        encoding="utf-8")
    (d / "roster.csv").write_text(
        "researcher_id,full_name,university_org_id,sds_id\nR1,Rita Uno,UNI-A,SDS1\n",
        encoding="utf-8")
    lines = [
        '{"pub_id": "T1", "year": 2002, "journal_id": "JRN-A", '
        '"authors": [{"raw_name": "Uno R.", "researcher_id": "R1", "org_id": "UNI-A"}], '
        '"address_org_ids": ["UNI-A"]}',
    ]
    lines.extend(extra_pub_lines)
    (d / "publications.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return load_corpus(d, window=(2002, 2002))


def test_midrank_basic():
    assert midrank_percentiles([1.0, 2.0, 3.0]) == [
        100.0 * 0.5 / 3, 100.0 * 1.5 / 3, 100.0 * 2.5 / 3]
    assert midrank_percentiles([5.0, 5.0, 7.0]) == [100.0 / 3, 100.0 / 3, 100.0 * 2.5 / 3]
    assert midrank_percentiles([7.5]) == [50.0]
    assert midrank_percentiles([2.0, 2.0, 2.0]) == [50.0, 50.0, 50.0]


def test_midrank_empty():
    with pytest.raises(errors.EmptySample):
        midrank_percentiles([])


def test_midrank_preserves_input_order():
    assert midrank_percentiles([3.0, 1.0, 2.0]) == [
        100.0 * 2.5 / 3, 100.0 * 0.5 / 3, 100.0 * 1.5 / 3]


@given(st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=120))
@settings(max_examples=300)
def test_midrank_group_mean_is_fifty(values):
    ranks = midrank_percentiles([float(v) for v in values])
    assert abs(sum(ranks) / len(ranks) - 50.0) <= 1e-9
    assert all(0.0 < r < 100.0 for r in ranks)


@given(st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=120))
@settings(max_examples=300)
def test_midrank_monotone_transform_invariant(values):
    floats = [float(v) for v in values]
    shifted = [2.0 * v + 128.0 for v in floats]
    assert midrank_percentiles(floats) == midrank_percentiles(shifted)


def test_if_percentile_ranks(corpus40):
    for year in (2001, 2002, 2003):
        ranks = if_percentile_ranks(corpus40, year)
        assert ranks.year == year
        assert ranks.ranks[("JRN-A", "CAT-A")].rank_pct == pytest.approx(float(100 * A), abs=1e-12)
        assert ranks.ranks[("JRN-B", "CAT-A")].rank_pct == 50.0
        assert ranks.ranks[("JRN-G", "CAT-A")].rank_pct == pytest.approx(250.0 / 3, abs=1e-12)
        assert ranks.ranks[("JRN-B", "CAT-B")].rank_pct == 25.0
        assert ranks.ranks[("JRN-G", "CAT-B")].rank_pct == 75.0
        assert ranks.ranks[("JRN-G", "CAT-C")].rank_pct == 50.0
        assert ranks.categories["JRN-G"] == ("CAT-A", "CAT-B", "CAT-C")


def test_if_percentile_ranks_requires_coverage(fixture_copy):
    with (fixture_copy / "journals.csv").open("a", encoding="utf-8") as fh:
        fh.write("JRN-Q,Quaderni Storici,1998,1.500,CAT-A\n")
    c = load_corpus(fixture_copy)
    with pytest.raises(errors.MissingIF):
        if_percentile_ranks(c, 2002)


def test_article_ifpr_unranked_journal(corpus40):
    empty = YearRanks(year=2001, ranks={}, categories={})
    with pytest.raises(errors.UnrankedJournal):
        article_ifpr(corpus40.publications[0], empty)


def test_ifpr_by_publication(corpus40):
    expected = {"JRN-A": float(100 * A), "JRN-B": 37.5, "JRN-G": float(100 * G)}
    ifpr = ifpr_by_publication(corpus40)
    assert set(ifpr) == {p.pub_id for p in corpus40.publications}
    for pub in corpus40.publications:
        assert ifpr[pub.pub_id] == pytest.approx(expected[pub.journal_id], abs=1e-12)


def test_ifpr_accepts_prebuilt_index(corpus40):
    index = build_rank_index(corpus40)
    assert set(index) == {2001, 2002, 2003}
    assert ifpr_by_publication(corpus40, index) == ifpr_by_publication(corpus40)


def test_publications_by_sector(corpus40):
    by_sds = publications_by_sector(corpus40, LEVEL_SDS)
    assert {k: len(v) for k, v in by_sds.items()} == {
        "BIO1": 8, "BIO2": 6, "CHIM1": 8, "CHIM2": 5, "ELEC": 10, "MECH": 8}
    assert "P04" in by_sds["CHIM1"] and "P04" in by_sds["BIO1"]
    by_uda = publications_by_sector(corpus40, LEVEL_UDA)
    assert {k: len(v) for k, v in by_uda.items()} == {"BIO": 13, "CHEM": 12, "ENG": 18}


def test_publications_by_category(corpus40):
    by_cat = publications_by_category(corpus40)
    assert {k: len(v) for k, v in by_cat.items()} == {"CAT-A": 40, "CAT-B": 26, "CAT-C": 12}


def test_sectors_of_publication(corpus40):
    pubs = {p.pub_id: p for p in corpus40.publications}
    assert sectors_of_publication(corpus40, pubs["P04"]) == frozenset({"BIO1", "CHIM1"})
    assert sectors_of_publication(corpus40, pubs["P09"]) == frozenset({"ELEC"})


def test_sector_headcounts(corpus40):
    assert sector_headcounts(corpus40, LEVEL_SDS) == {
        "BIO1": 2, "BIO2": 1, "CHIM1": 2, "CHIM2": 1, "ELEC": 8, "MECH": 2}
    assert sector_headcounts(corpus40, LEVEL_UDA) == {"BIO": 3, "CHEM": 3, "ENG": 10}


def test_sector_intensity_sds(corpus40):
    rows = {r.sector_id: r for r in sector_intensity(corpus40, LEVEL_SDS)}
    elec = rows["ELEC"]
    assert elec.n_industry_coauth == 3
    assert elec.pct_of_all == pytest.approx(30.0, abs=1e-12)
    assert elec.pct_of_coauth == pytest.approx(50.0, abs=1e-12)
    assert elec.per_researcher == pytest.approx(0.375, abs=1e-12)
    assert rows["CHIM1"].pct_of_coauth == pytest.approx(100.0 / 3, abs=1e-12)
    assert rows["MECH"].n_industry_coauth == 0
    assert rows["MECH"].pct_of_all == 0.0
    assert [r.sector_id for r in sector_intensity(corpus40, LEVEL_SDS)] == sorted(rows)


def test_sector_intensity_uda(corpus40):
    rows = {r.sector_id: r for r in sector_intensity(corpus40, LEVEL_UDA)}
    eng = rows["ENG"]
    assert eng.n_industry_coauth == 3
    assert eng.pct_of_all == pytest.approx(100.0 * 3 / 18, abs=1e-12)
    assert eng.pct_of_coauth == pytest.approx(100.0 * 3 / 9, abs=1e-12)
    assert eng.per_researcher == pytest.approx(0.3, abs=1e-12)


def test_sector_intensity_zero_denominator(tmp_path):
    c = _tiny_corpus(tmp_path)
    rows = sector_intensity(c, LEVEL_SDS)
    assert len(rows) == 1
    row = rows[0]
    # one intramural article: no co-authored output, so that share is undefined
    assert row.n_industry_coauth == 0
    assert row.pct_of_all == 0.0
    assert row.pct_of_coauth is None
    assert row.per_researcher == 0.0


def test_researcher_output(corpus40):
    for rid, n in OUTPUT_EXPECTED.items():
        assert researcher_output(corpus40, rid) == n
    with pytest.raises(errors.UnknownResearcher):
        researcher_output(corpus40, "RES-NOPE")


def test_researcher_fss(corpus40):
    for rid, expected in FSS_EXPECTED.items():
        assert researcher_fss(corpus40, rid) == pytest.approx(float(expected), abs=1e-12)
    with pytest.raises(errors.UnknownResearcher):
        researcher_fss(corpus40, "RES-NOPE")


def test_researcher_performance_bulk(corpus40):
    perf = researcher_performance(corpus40)
    assert set(perf) == set(corpus40.researchers)
    for rid, p in perf.items():
        assert p.output == OUTPUT_EXPECTED[rid]
        assert p.fss == pytest.approx(float(FSS_EXPECTED[rid]), abs=1e-12)
        assert p.fss <= p.output


def test_rank_within_sector(corpus40):
    perf = researcher_performance(corpus40)
    o_ranks = rank_within_sector(corpus40, {rid: float(p.output) for rid, p in perf.items()})
    assert o_ranks == pytest.approx(O_RANK_EXPECTED, abs=1e-12)
    f_ranks = rank_within_sector(corpus40, {rid: p.fss for rid, p in perf.items()})
    assert f_ranks == pytest.approx(FSS_RANK_EXPECTED, abs=1e-12)


def test_rank_within_sector_errors(corpus40):
    with pytest.raises(errors.EmptySector):
        rank_within_sector(corpus40, {})
    with pytest.raises(errors.UnknownResearcher):
        rank_within_sector(corpus40, {"RES-NOPE": 1.0})


def test_multidisc_sds(corpus40):
    assert multidisc_sds(corpus40, {"P04"}) == 2.0
    assert multidisc_sds(corpus40, {"P01", "P02", "P03"}) == 1.0
    assert multidisc_sds(corpus40, {"P04", "P18", "P19", "P20", "P21", "P31", "P34", "P40"}) \
        == pytest.approx(1.375, abs=1e-12)
    with pytest.raises(errors.EmptySet):
        multidisc_sds(corpus40, set())


def test_multidisc_sci(corpus40):
    assert multidisc_sci(corpus40, {"P03"}) == 3.0
    assert multidisc_sci(corpus40, {"P01"}) == 1.0
    assert multidisc_sci(corpus40, {"P02", "P03", "P04"}) == pytest.approx(7.0 / 3, abs=1e-12)
    with pytest.raises(errors.EmptySet):
        multidisc_sci(corpus40, set())


def test_multidisc_requires_academic_author(tmp_path):
    extra = (
        '{"pub_id": "T2", "year": 2002, "journal_id": "JRN-A", '
        '"authors": [{"raw_name": "Solo F.", "researcher_id": null, "org_id": "FRM-X"}], '
        '"address_org_ids": ["FRM-X"]}',
    )
    c = _tiny_corpus(tmp_path, extra)
    with pytest.raises(errors.NoAcademicAuthors):
        multidisc_sds(c, {"T2"})


def test_multidisc_by_scope_industry(corpus40):
    rows = multidisc_by_scope(corpus40, "industry_coauthored")
    as_tuples = [(r.scope_id, r.ii_sds, r.ii_sci, r.n_pubs) for r in rows]
    assert as_tuples[:3] == [("BIO1", 2.0, None, 1), ("CHIM1", 2.0, None, 1),
                             ("ELEC", 1.0, None, 3)]
    assert as_tuples[3][0] == "CAT-A" and as_tuples[3][2] == 2.0 and as_tuples[3][3] == 4
    assert as_tuples[4][0] == "CAT-B" and as_tuples[4][2] == pytest.approx(7.0 / 3)
    assert as_tuples[5] == ("CAT-C", None, 3.0, 1)
    assert all(r.subset == "industry_coauthored" for r in rows)


def test_multidisc_by_scope_all(corpus40):
    rows = {r.scope_id: r for r in multidisc_by_scope(corpus40, "all")}
    assert len(rows) == 9
    assert rows["ELEC"].ii_sds == 1.0 and rows["ELEC"].n_pubs == 10
    assert rows["CHIM1"].ii_sds == pytest.approx(1.375, abs=1e-12)
    assert rows["BIO2"].ii_sds == pytest.approx(4.0 / 3, abs=1e-12)
    assert rows["CAT-A"].ii_sci == pytest.approx(1.95, abs=1e-12)
    assert rows["CAT-B"].ii_sci == pytest.approx(32.0 / 13, abs=1e-12)
    assert rows["CAT-C"].ii_sci == 3.0
