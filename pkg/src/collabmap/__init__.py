"""collabmap: university-industry collaboration mapping from co-authorship data."""

from .collab import (
    CollabEdge,
    CollabSummary,
    CollaborationProfile,
    classify_corpus,
    classify_publication,
    count_collaborations,
    extract_edges,
    subset,
)
from .corpus import (
    Corpus,
    Organization,
    Publication,
    Researcher,
    Taxonomy,
    load_corpus,
    load_taxonomy,
    validate_corpus,
)
from .indicators import (
    MultidiscIndex,
    PercentileRanked,
    ResearcherPerformance,
    SectorIntensityRow,
    article_ifpr,
    if_percentile_ranks,
    midrank_percentiles,
    multidisc_sci,
    multidisc_sds,
    rank_within_sector,
    researcher_fss,
    researcher_output,
    sector_intensity,
)
from .resolve import (
    AliasMap,
    MatchSuggestion,
    Unresolved,
    build_alias_map,
    jaro_winkler,
    normalize_org_name,
    resolve_org,
    suggest_aliases,
)
from .stats import Comparison, Sample, TestResult, compare, descriptive, paired_t, t_cdf, welch_t

__version__ = "0.1.0"

__all__ = [
    "AliasMap",
    "CollabEdge",
    "CollabSummary",
    "CollaborationProfile",
    "Comparison",
    "Corpus",
    "MatchSuggestion",
    "MultidiscIndex",
    "Organization",
    "PercentileRanked",
    "Publication",
    "Researcher",
    "ResearcherPerformance",
    "Sample",
    "SectorIntensityRow",
    "Taxonomy",
    "TestResult",
    "Unresolved",
    "article_ifpr",
    "build_alias_map",
    "classify_corpus",
    "classify_publication",
    "compare",
    "count_collaborations",
    "descriptive",
    "extract_edges",
    "if_percentile_ranks",
    "jaro_winkler",
    "load_corpus",
    "load_taxonomy",
    "midrank_percentiles",
    "multidisc_sci",
    "multidisc_sds",
    "normalize_org_name",
    "paired_t",
    "rank_within_sector",
    "researcher_fss",
    "researcher_output",
    "resolve_org",
    "sector_intensity",
    "subset",
    "suggest_aliases",
    "t_cdf",
    "validate_corpus",
    "welch_t",
]
