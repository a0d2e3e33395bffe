"""Bibliometric indicators over a loaded corpus.

Covers journal impact percentile ranks, per-sector industry co-authorship
intensity, per-researcher output and fractional scientific strength, and the
two multidisciplinarity indices. Every aggregate iterates in sorted id order,
so all results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import collab
from .corpus import Corpus, Publication
from .errors import (
    EmptySample,
    EmptySector,
    EmptySet,
    MissingIF,
    NoAcademicAuthors,
    UnknownResearcher,
    UnrankedJournal,
)

LEVEL_SDS = "sds"
LEVEL_UDA = "uda"


def midrank_percentiles(values: Sequence[float]) -> list[float]:
    """Percentile rank of each value in its own distribution, midrank ties.

    rank_pct = 100 * (count_below + 0.5 * count_equal) / n. The group mean is
    always 50, and any strictly increasing transform of the values leaves the
    ranks unchanged.
    """
    n = len(values)
    if n == 0:
        raise EmptySample("cannot rank an empty distribution")
    order = sorted(range(n), key=lambda i: values[i])
    out = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        equal = j - i + 1
        pct = 100.0 * (i + 0.5 * equal) / n
        for k in range(i, j + 1):
            out[order[k]] = pct
        i = j + 1
    return out


@dataclass(frozen=True)
class PercentileRanked:
    subject_id: str
    value: float
    rank_pct: float


@dataclass(frozen=True)
class YearRanks:
    """Per-category journal impact percentile ranks for one year."""

    year: int
    ranks: dict[tuple[str, str], PercentileRanked]  # (journal_id, category) -> rank
    categories: dict[str, tuple[str, ...]]  # journal_id -> categories that year


def if_percentile_ranks(corpus: Corpus, year: int) -> YearRanks:
    """Rank every journal's impact factor within each of its categories.

    A journal's record for the year follows the same resolution rule articles
    use (exact year, else nearest in the window); a journal with no usable
    record raises MissingIF.
    """
    effective = {}
    for journal_id in sorted(corpus.journal_ids):
        record = corpus.effective_journal(journal_id, year)
        if record is None:
            raise MissingIF(journal_id, year)
        effective[journal_id] = record

    by_category: dict[str, list[str]] = {}
    for journal_id, record in effective.items():
        for cat in record.sci_categories:
            by_category.setdefault(cat, []).append(journal_id)

    ranks: dict[tuple[str, str], PercentileRanked] = {}
    for cat in sorted(by_category):
        members = sorted(by_category[cat])
        pcts = midrank_percentiles([effective[j].impact_factor for j in members])
        for journal_id, pct in zip(members, pcts):
            ranks[(journal_id, cat)] = PercentileRanked(
                subject_id=journal_id,
                value=effective[journal_id].impact_factor,
                rank_pct=pct,
            )
    categories = {j: record.sci_categories for j, record in effective.items()}
    return YearRanks(year=year, ranks=ranks, categories=categories)


def build_rank_index(corpus: Corpus) -> dict[int, YearRanks]:
    """YearRanks for every publication year present in the corpus."""
    years = sorted({pub.year for pub in corpus.publications})
    return {year: if_percentile_ranks(corpus, year) for year in years}


def article_ifpr(pub: Publication, ranks: YearRanks) -> float:
    """Mean percentile rank of the publishing journal over its categories."""
    cats = ranks.categories.get(pub.journal_id)
    if cats is None:
        raise UnrankedJournal(f"journal {pub.journal_id!r} is not in the rank index")
    total = 0.0
    for cat in cats:
        total += ranks.ranks[(pub.journal_id, cat)].rank_pct
    return total / len(cats)


def ifpr_by_publication(
    corpus: Corpus, index: Mapping[int, YearRanks] | None = None
) -> dict[str, float]:
    """Article-level impact percentile for every publication."""
    if index is None:
        index = build_rank_index(corpus)
    return {pub.pub_id: article_ifpr(pub, index[pub.year]) for pub in corpus.publications}


# -- sector attribution ---------------------------------------------------------

def sectors_of_publication(corpus: Corpus, pub: Publication) -> frozenset[str]:
    """Distinct sectors of the roster-linked authors of one publication."""
    return frozenset(
        corpus.researchers[a.researcher_id].sds_id
        for a in pub.authors
        if a.researcher_id is not None
    )


def publications_by_sector(corpus: Corpus, level: str = LEVEL_SDS) -> dict[str, frozenset[str]]:
    """Publication ids attributed to each sector via its roster authors.

    An article whose authors span several sectors is attributed to each of
    them, once; at area level, sectors collapse onto their areas.
    """
    if level not in (LEVEL_SDS, LEVEL_UDA):
        raise ValueError(f"level must be 'sds' or 'uda', got {level!r}")
    acc: dict[str, set[str]] = {}
    for pub in corpus.publications:
        scopes = sectors_of_publication(corpus, pub)
        if level == LEVEL_UDA:
            scopes = frozenset(corpus.taxonomy.uda_of(s) for s in scopes)
        for scope in scopes:
            acc.setdefault(scope, set()).add(pub.pub_id)
    return {scope: frozenset(ids) for scope, ids in acc.items()}


def publications_by_category(corpus: Corpus) -> dict[str, frozenset[str]]:
    """Publication ids falling in each journal category."""
    acc: dict[str, set[str]] = {}
    for pub in corpus.publications:
        record = corpus.effective_journal(pub.journal_id, pub.year)
        assert record is not None  # loaded corpora are closed
        for cat in record.sci_categories:
            acc.setdefault(cat, set()).add(pub.pub_id)
    return {cat: frozenset(ids) for cat, ids in acc.items()}


def sector_headcounts(corpus: Corpus, level: str = LEVEL_SDS) -> dict[str, int]:
    """Roster headcount per sector (or per area)."""
    counts: dict[str, int] = {}
    for researcher in corpus.researchers.values():
        scope = researcher.sds_id
        if level == LEVEL_UDA:
            scope = corpus.taxonomy.uda_of(scope)
        counts[scope] = counts.get(scope, 0) + 1
    return counts


@dataclass(frozen=True)
class SectorIntensityRow:
    """Industry co-authorship intensity of one sector.

    Ratios with a zero denominator are None, never 0: a sector with no
    extramural output has no defined share of collaborative articles.
    """

    sector_id: str
    n_industry_coauth: int
    pct_of_all: float | None
    pct_of_coauth: float | None
    per_researcher: float | None


def sector_intensity(
    corpus: Corpus,
    level: str = LEVEL_SDS,
    home_country: str = collab.HOME_COUNTRY,
    profiles: Mapping[str, collab.CollaborationProfile] | None = None,
) -> list[SectorIntensityRow]:
    """The four intensity indicators per sector, sorted by sector id.

    Sectors with no attributed articles are omitted entirely.
    """
    if profiles is None:
        profiles = collab.classify_corpus(corpus, home_country)
    attributed = publications_by_sector(corpus, level)
    extramural = collab.subset(corpus, collab.SELECTOR_EXTRAMURAL, home_country, profiles)
    industry = collab.subset(corpus, collab.SELECTOR_INDUSTRY, home_country, profiles)
    headcounts = sector_headcounts(corpus, level)

    rows = []
    for sector_id in sorted(attributed):
        pubs = attributed[sector_id]
        n_all = len(pubs)
        n_extramural = len(pubs & extramural)
        n_industry = len(pubs & industry)
        headcount = headcounts.get(sector_id, 0)
        rows.append(
            SectorIntensityRow(
                sector_id=sector_id,
                n_industry_coauth=n_industry,
                pct_of_all=100.0 * n_industry / n_all if n_all else None,
                pct_of_coauth=100.0 * n_industry / n_extramural if n_extramural else None,
                per_researcher=n_industry / headcount if headcount else None,
            )
        )
    return rows


# -- per-researcher performance ---------------------------------------------------

@dataclass(frozen=True)
class ResearcherPerformance:
    researcher_id: str
    output: int
    fss: float


def _authored_publications(corpus: Corpus) -> dict[str, list[Publication]]:
    """Publications per roster researcher (distinct per publication)."""
    authored: dict[str, list[Publication]] = {r: [] for r in corpus.researchers}
    for pub in corpus.publications:
        seen = set()
        for author in pub.authors:
            rid = author.researcher_id
            if rid is not None and rid not in seen:
                authored[rid].append(pub)
                seen.add(rid)
    return authored


def researcher_output(corpus: Corpus, researcher_id: str) -> int:
    """Number of publications the researcher authored."""
    if researcher_id not in corpus.researchers:
        raise UnknownResearcher(f"researcher {researcher_id!r} is not on the roster")
    count = 0
    for pub in corpus.publications:
        if any(a.researcher_id == researcher_id for a in pub.authors):
            count += 1
    return count


def researcher_fss(
    corpus: Corpus,
    researcher_id: str,
    ifpr: Mapping[str, float] | None = None,
) -> float:
    """Fractional scientific strength: impact-weighted, co-author-fractioned.

    Each authored publication contributes (article_ifpr / 100) * (1 / number
    of byline authors). Always <= the researcher's output count.
    """
    if researcher_id not in corpus.researchers:
        raise UnknownResearcher(f"researcher {researcher_id!r} is not on the roster")
    if ifpr is None:
        ifpr = ifpr_by_publication(corpus)
    total = 0.0
    for pub in corpus.publications:
        if any(a.researcher_id == researcher_id for a in pub.authors):
            total += (ifpr[pub.pub_id] / 100.0) / len(pub.authors)
    return total


def researcher_performance(
    corpus: Corpus, ifpr: Mapping[str, float] | None = None
) -> dict[str, ResearcherPerformance]:
    """Output and FSS for every roster researcher in one pass."""
    if ifpr is None:
        ifpr = ifpr_by_publication(corpus)
    authored = _authored_publications(corpus)
    result = {}
    for researcher_id in sorted(corpus.researchers):
        pubs = authored[researcher_id]
        fss = 0.0
        for pub in pubs:
            fss += (ifpr[pub.pub_id] / 100.0) / len(pub.authors)
        result[researcher_id] = ResearcherPerformance(researcher_id, len(pubs), fss)
    return result


def rank_within_sector(corpus: Corpus, values: Mapping[str, float]) -> dict[str, float]:
    """Midrank percentile of each researcher's value within their own sector.

    The population of each sector is exactly the researchers present in
    ``values``; every sector's ranks average to 50.
    """
    if not values:
        raise EmptySector("no researchers to rank")
    groups: dict[str, list[str]] = {}
    for researcher_id in sorted(values):
        researcher = corpus.researchers.get(researcher_id)
        if researcher is None:
            raise UnknownResearcher(f"researcher {researcher_id!r} is not on the roster")
        groups.setdefault(researcher.sds_id, []).append(researcher_id)

    ranks: dict[str, float] = {}
    for sds_id in sorted(groups):
        members = groups[sds_id]
        pcts = midrank_percentiles([values[r] for r in members])
        for researcher_id, pct in zip(members, pcts):
            ranks[researcher_id] = pct
    return ranks


# -- multidisciplinarity ------------------------------------------------------------

@dataclass(frozen=True)
class MultidiscIndex:
    """Multidisciplinarity of one scope (a sector or a journal category)."""

    scope_id: str
    subset: str
    ii_sds: float | None
    ii_sci: float | None
    n_pubs: int


def sector_counts_by_publication(corpus: Corpus) -> dict[str, int]:
    """Distinct author-sector count per publication (0 if no roster author)."""
    return {
        pub.pub_id: len(sectors_of_publication(corpus, pub)) for pub in corpus.publications
    }


def category_counts_by_publication(corpus: Corpus) -> dict[str, int]:
    """Journal category count per publication."""
    counts = {}
    for pub in corpus.publications:
        record = corpus.effective_journal(pub.journal_id, pub.year)
        assert record is not None  # loaded corpora are closed
        counts[pub.pub_id] = len(record.sci_categories)
    return counts


def multidisc_sds(
    corpus: Corpus,
    pub_ids: Iterable[str],
    counts: Mapping[str, int] | None = None,
) -> float:
    """Mean number of distinct author sectors per publication."""
    ids = sorted(pub_ids)
    if not ids:
        raise EmptySet("cannot average over an empty publication set")
    if counts is None:
        counts = sector_counts_by_publication(corpus)
    total = 0
    for pub_id in ids:
        count = counts[pub_id]
        if count == 0:
            raise NoAcademicAuthors(pub_id)
        total += count
    return total / len(ids)


def multidisc_sci(
    corpus: Corpus,
    pub_ids: Iterable[str],
    counts: Mapping[str, int] | None = None,
) -> float:
    """Mean number of journal categories per publication."""
    ids = sorted(pub_ids)
    if not ids:
        raise EmptySet("cannot average over an empty publication set")
    if counts is None:
        counts = category_counts_by_publication(corpus)
    total = 0
    for pub_id in ids:
        total += counts[pub_id]
    return total / len(ids)


def multidisc_by_scope(
    corpus: Corpus,
    selector: str,
    home_country: str = collab.HOME_COUNTRY,
    profiles: Mapping[str, collab.CollaborationProfile] | None = None,
) -> list[MultidiscIndex]:
    """Multidisciplinarity per scope, restricted to a publication subset.

    Sector scopes carry the author-sector index, category scopes the journal
    category index; scopes with no publication in the subset are omitted.
    """
    if profiles is None:
        profiles = collab.classify_corpus(corpus, home_country)
    chosen = collab.subset(corpus, selector, home_country, profiles)
    sds_counts = sector_counts_by_publication(corpus)
    cat_counts = category_counts_by_publication(corpus)

    rows = []
    by_sector = publications_by_sector(corpus, LEVEL_SDS)
    for sector_id in sorted(by_sector):
        ids = by_sector[sector_id] & chosen
        if not ids:
            continue
        rows.append(
            MultidiscIndex(
                scope_id=sector_id,
                subset=selector,
                ii_sds=multidisc_sds(corpus, ids, sds_counts),
                ii_sci=None,
                n_pubs=len(ids),
            )
        )
    by_category = publications_by_category(corpus)
    for cat in sorted(by_category):
        ids = by_category[cat] & chosen
        if not ids:
            continue
        rows.append(
            MultidiscIndex(
                scope_id=cat,
                subset=selector,
                ii_sds=None,
                ii_sci=multidisc_sci(corpus, ids, cat_counts),
                n_pubs=len(ids),
            )
        )
    return rows
