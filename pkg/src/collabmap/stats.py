"""Statistics kernel and corpus comparison assembly.

The kernel is self-contained: descriptive statistics, the paired t-test, the
Welch two-sample t-test, and the t-distribution CDF evaluated through the
regularized incomplete beta function (Lentz continued fraction). On top of it,
:func:`compare` assembles the aligned samples for each supported corpus
comparison and runs the appropriate test.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, isfinite, isnan, lgamma, log, log1p, sqrt
from typing import Mapping, Sequence

from . import collab, indicators
from .corpus import Corpus
from .errors import (
    EmptySample,
    InsufficientData,
    InsufficientSectors,
    InvalidDf,
    LengthMismatch,
    UnknownGrouping,
    UnknownIndicator,
    ZeroVariance,
)

GROUPING_SDS_ALL_VS_COLLAB = "sds_all_vs_collab"
GROUPING_SDS_ALL_VS_INDUSTRY = "sds_all_vs_industry"
GROUPING_RESEARCHERS = "researchers_industry_vs_rest"
GROUPING_MULTIDISC_ALL = "multidisc_all_vs_industry"
GROUPING_MULTIDISC_COLLAB = "multidisc_collab_vs_industry"

GROUPINGS = (
    GROUPING_SDS_ALL_VS_COLLAB,
    GROUPING_SDS_ALL_VS_INDUSTRY,
    GROUPING_RESEARCHERS,
    GROUPING_MULTIDISC_ALL,
    GROUPING_MULTIDISC_COLLAB,
)

INDICATORS_BY_GROUPING: dict[str, tuple[str, ...]] = {
    GROUPING_SDS_ALL_VS_COLLAB: ("ifpr",),
    GROUPING_SDS_ALL_VS_INDUSTRY: ("ifpr",),
    GROUPING_RESEARCHERS: ("o", "fss"),
    GROUPING_MULTIDISC_ALL: ("ii_sds", "ii_sci"),
    GROUPING_MULTIDISC_COLLAB: ("ii_sds", "ii_sci"),
}


@dataclass(frozen=True)
class Sample:
    """A labeled sample with its summary statistics.

    ``variance`` uses the n-1 denominator and is None for singletons.
    ``values`` may be empty when the sample was built from summary stats.
    """

    label: str
    values: tuple[float, ...]
    n: int
    mean: float
    variance: float | None

    @classmethod
    def from_stats(cls, label: str, n: int, mean: float, variance: float | None) -> Sample:
        return cls(label=label, values=(), n=n, mean=mean, variance=variance)


@dataclass(frozen=True)
class TestResult:
    t: float
    df: float
    p_one: float
    p_two: float
    kind: str  # "paired" or "welch"


@dataclass(frozen=True)
class Comparison:
    """A finished comparison: the two samples, the test, the exclusions."""

    grouping: str
    indicator: str
    sample_a: Sample
    sample_b: Sample
    result: TestResult
    n_units: int
    excluded: int


def descriptive(values: Sequence[float], label: str = "") -> Sample:
    """Mean and sample variance, computed in input order."""
    n = len(values)
    if n == 0:
        raise EmptySample("descriptive statistics need at least one value")
    mean = sum(values) / n
    if n == 1:
        variance = None
    else:
        variance = sum((v - mean) ** 2 for v in values) / (n - 1)
    return Sample(label=label, values=tuple(values), n=n, mean=mean, variance=variance)


def _beta_contfrac(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the continued fraction for I_x(a, b)
    tiny = 1e-300
    eps = 1e-16
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 400):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h


def _reg_inc_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b) for x in [0, 1]."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = lgamma(a + b) - lgamma(a) - lgamma(b) + a * log(x) + b * log1p(-x)
    front = exp(ln_front)
    # the continued fraction converges fast only below the crossover point
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_contfrac(a, b, x) / a
    return 1.0 - front * _beta_contfrac(b, a, 1.0 - x) / b


def t_cdf(t: float, df: float) -> float:
    """Cumulative probability of Student's t distribution.

    Uses cdf(t) = 1 - I_x(df/2, 1/2) / 2 for t >= 0 with x = df / (df + t^2),
    and symmetry below zero. Accepts fractional degrees of freedom.
    """
    if not isfinite(df) or not df > 0:
        raise InvalidDf(f"degrees of freedom must be positive and finite, got {df!r}")
    if isnan(t):
        raise ValueError("t must be a number")
    if not isfinite(t):
        return 1.0 if t > 0 else 0.0
    x = df / (df + t * t)
    ib = _reg_inc_beta(0.5 * df, 0.5, x)
    if t >= 0:
        return 1.0 - 0.5 * ib
    return 0.5 * ib


def _p_values(t: float, df: float) -> tuple[float, float]:
    """One-tail p on the observed side, and the symmetric two-tail p."""
    cdf = t_cdf(t, df)
    p_one = cdf if t < 0 else 1.0 - cdf
    p_two = 2.0 * min(p_one, 1.0 - p_one)
    return p_one, p_two


def paired_t(xs: Sequence[float], ys: Sequence[float]) -> TestResult:
    """Paired t-test on aligned samples: t = mean(d) / (sd(d) / sqrt(n))."""
    if len(xs) != len(ys):
        raise LengthMismatch(f"paired samples differ in length: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise InsufficientData("paired test needs at least 2 pairs")
    diffs = [x - y for x, y in zip(xs, ys)]
    mean_d = sum(diffs) / n
    var_d = sum((d - mean_d) ** 2 for d in diffs) / (n - 1)
    if var_d == 0.0:
        raise ZeroVariance("all pairwise differences are equal")
    t = mean_d / (sqrt(var_d) / sqrt(n))
    df = float(n - 1)
    p_one, p_two = _p_values(t, df)
    return TestResult(t=t, df=df, p_one=p_one, p_two=p_two, kind="paired")


def welch_t(a: Sample, b: Sample) -> TestResult:
    """Welch's unequal-variance t-test with Welch-Satterthwaite df."""
    if a.n < 2 or b.n < 2:
        raise InsufficientData("welch test needs at least 2 observations per group")
    assert a.variance is not None and b.variance is not None
    se_a = a.variance / a.n
    se_b = b.variance / b.n
    pooled = se_a + se_b
    if pooled == 0.0:
        raise ZeroVariance("both groups have zero variance")
    t = (a.mean - b.mean) / sqrt(pooled)
    df = pooled * pooled / (se_a * se_a / (a.n - 1) + se_b * se_b / (b.n - 1))
    p_one, p_two = _p_values(t, df)
    return TestResult(t=t, df=df, p_one=p_one, p_two=p_two, kind="welch")


# -- comparison assembly ----------------------------------------------------------

def _mean_over(pub_ids: frozenset[str], per_pub: Mapping[str, float]) -> float:
    ids = sorted(pub_ids)
    return sum(per_pub[i] for i in ids) / len(ids)


def _paired_scope_samples(
    scopes: Mapping[str, frozenset[str]],
    set_a: frozenset[str] | None,
    set_b: frozenset[str],
    per_pub: Mapping[str, float],
    floor_on_a: int,
) -> tuple[list[float], list[float], int, int]:
    """Per-scope means of ``per_pub`` over two nested publication subsets.

    set_a of None means "all publications of the scope". Scopes whose side-a
    set is smaller than ``floor_on_a`` or whose side-b set is empty are
    excluded; the exclusion count covers scopes that had a non-empty side-a
    base but were dropped.
    """
    xs: list[float] = []
    ys: list[float] = []
    excluded = 0
    for scope_id in sorted(scopes):
        scope_pubs = scopes[scope_id]
        a_ids = scope_pubs if set_a is None else scope_pubs & set_a
        b_ids = scope_pubs & set_b
        if not a_ids:
            continue
        if len(a_ids) < floor_on_a or not b_ids:
            excluded += 1
            continue
        xs.append(_mean_over(a_ids, per_pub))
        ys.append(_mean_over(b_ids, per_pub))
    return xs, ys, len(xs), excluded


def compare(
    corpus: Corpus,
    grouping: str,
    indicator: str,
    *,
    home_country: str = collab.HOME_COUNTRY,
    min_collab_pubs: int = 7,
    profiles: Mapping[str, collab.CollaborationProfile] | None = None,
    ifpr: Mapping[str, float] | None = None,
) -> Comparison:
    """Assemble the aligned samples for a named comparison and test them.

    Exclusion thresholds are applied before testing. Paired groupings compare
    per-scope means; the researcher grouping runs Welch's test on within-sector
    percentile ranks of the population in sectors with at least one article.
    """
    if grouping not in INDICATORS_BY_GROUPING:
        raise UnknownGrouping(f"unknown grouping {grouping!r}; expected one of {GROUPINGS}")
    if indicator not in INDICATORS_BY_GROUPING[grouping]:
        raise UnknownIndicator(
            f"indicator {indicator!r} is not valid for {grouping!r}; "
            f"expected one of {INDICATORS_BY_GROUPING[grouping]}"
        )
    if profiles is None:
        profiles = collab.classify_corpus(corpus, home_country)
    industry = collab.subset(corpus, collab.SELECTOR_INDUSTRY, home_country, profiles)
    extramural = collab.subset(corpus, collab.SELECTOR_EXTRAMURAL, home_country, profiles)

    if grouping in (GROUPING_SDS_ALL_VS_COLLAB, GROUPING_SDS_ALL_VS_INDUSTRY):
        if ifpr is None:
            ifpr = indicators.ifpr_by_publication(corpus)
        scopes = indicators.publications_by_sector(corpus, indicators.LEVEL_SDS)
        if grouping == GROUPING_SDS_ALL_VS_COLLAB:
            # scopes qualify by their extramural output, with the count floor
            narrowed = {
                s: ids & extramural for s, ids in scopes.items() if ids & extramural
            }
            xs, ys, n_units, excluded = [], [], 0, 0
            for scope_id in sorted(narrowed):
                collab_ids = narrowed[scope_id]
                if len(collab_ids) < min_collab_pubs:
                    excluded += 1
                    continue
                xs.append(_mean_over(scopes[scope_id], ifpr))
                ys.append(_mean_over(collab_ids, ifpr))
                n_units += 1
            label_b = "extramural collaborations"
        else:
            xs, ys, excluded = [], [], 0
            for scope_id in sorted(scopes):
                industry_ids = scopes[scope_id] & industry
                if not industry_ids:
                    excluded += 1
                    continue
                xs.append(_mean_over(scopes[scope_id], ifpr))
                ys.append(_mean_over(industry_ids, ifpr))
            n_units = len(xs)
            label_b = "industry co-authored"
        if n_units < 2:
            raise InsufficientSectors(
                f"only {n_units} sectors survive the exclusion thresholds"
            )
        sample_a = descriptive(xs, "all publications")
        sample_b = descriptive(ys, label_b)
        result = paired_t(xs, ys)
        return Comparison(grouping, indicator, sample_a, sample_b, result, n_units, excluded)

    if grouping == GROUPING_RESEARCHERS:
        if ifpr is None:
            ifpr = indicators.ifpr_by_publication(corpus)
        perf = indicators.researcher_performance(corpus, ifpr)
        active = set(indicators.publications_by_sector(corpus, indicators.LEVEL_SDS))
        population = [
            rid
            for rid in sorted(corpus.researchers)
            if corpus.researchers[rid].sds_id in active
        ]
        excluded = len(corpus.researchers) - len(population)
        values = {
            rid: (perf[rid].fss if indicator == "fss" else float(perf[rid].output))
            for rid in population
        }
        ranks = indicators.rank_within_sector(corpus, values)
        collaborators: set[str] = set()
        for pub in corpus.publications:
            if pub.pub_id in industry:
                for author in pub.authors:
                    if author.researcher_id is not None:
                        collaborators.add(author.researcher_id)
        group_a = [ranks[r] for r in population if r in collaborators]
        group_b = [ranks[r] for r in population if r not in collaborators]
        if not group_a or not group_b:
            raise InsufficientSectors("one of the researcher groups is empty")
        sample_a = descriptive(group_a, "industry collaborators")
        sample_b = descriptive(group_b, "non-collaborators")
        result = welch_t(sample_a, sample_b)
        return Comparison(
            grouping, indicator, sample_a, sample_b, result, len(population), excluded
        )

    # multidisciplinarity groupings
    if indicator == "ii_sds":
        scopes = indicators.publications_by_sector(corpus, indicators.LEVEL_SDS)
        per_pub = {
            k: float(v) for k, v in indicators.sector_counts_by_publication(corpus).items()
        }
    else:
        scopes = indicators.publications_by_category(corpus)
        per_pub = {
            k: float(v) for k, v in indicators.category_counts_by_publication(corpus).items()
        }
    if grouping == GROUPING_MULTIDISC_ALL:
        set_a = None
        label_a = "all publications"
    else:
        set_a = extramural
        label_a = "extramural collaborations"
    xs, ys, n_units, excluded = _paired_scope_samples(scopes, set_a, industry, per_pub, 1)
    if n_units < 2:
        raise InsufficientSectors(f"only {n_units} scopes survive the exclusion thresholds")
    sample_a = descriptive(xs, label_a)
    sample_b = descriptive(ys, "industry co-authored")
    result = paired_t(xs, ys)
    return Comparison(grouping, indicator, sample_a, sample_b, result, n_units, excluded)
