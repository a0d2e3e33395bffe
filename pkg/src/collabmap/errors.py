"""Exception types shared across the package.

Everything raised on bad input or bad state derives from CollabmapError,
so callers (and the CLI) can catch one base class.
"""

from __future__ import annotations


class CollabmapError(Exception):
    """Base class for all domain errors."""


# -- corpus loading ----------------------------------------------------------

class ParseError(CollabmapError):
    """A data file is malformed at a specific location."""

    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        self.message = message
        super().__init__(f"{path}:{line}: {message}")


class DuplicateId(CollabmapError):
    """An identifier that must be unique appears more than once."""

    def __init__(self, kind: str, value: str):
        self.kind = kind
        self.value = value
        super().__init__(f"duplicate {kind}: {value!r}")


class DanglingUda(CollabmapError):
    """A disciplinary sector row does not map to a single, well-formed area."""

    def __init__(self, sds_id: str, message: str):
        self.sds_id = sds_id
        super().__init__(f"sector {sds_id!r}: {message}")


class MissingFile(CollabmapError):
    """A required input file is absent from the data directory."""

    def __init__(self, path: str):
        self.path = path
        super().__init__(f"missing input file: {path}")


class DanglingReference(CollabmapError):
    """A record references an identifier that does not exist."""

    def __init__(self, entity: str, ref_id: str, context: str = ""):
        self.entity = entity
        self.ref_id = ref_id
        self.context = context
        detail = f" ({context})" if context else ""
        super().__init__(f"unknown {entity}: {ref_id!r}{detail}")


class EmptyCorpus(CollabmapError):
    """No publications remain after ingestion filtering."""


class InvariantViolation(CollabmapError):
    """Loaded records are individually well-formed but mutually inconsistent."""


# -- organization name resolution --------------------------------------------

class AmbiguousAlias(CollabmapError):
    """One normalized alias maps to more than one organization."""

    def __init__(self, alias: str, org_ids: tuple[str, str]):
        self.alias = alias
        self.org_ids = org_ids
        super().__init__(
            f"alias {alias!r} maps to both {org_ids[0]!r} and {org_ids[1]!r}"
        )


# -- collaboration analysis ---------------------------------------------------

class UnknownSelector(CollabmapError):
    """A publication subset selector name is not recognized."""


# -- indicators ----------------------------------------------------------------

class MissingIF(CollabmapError):
    """A journal has no usable impact factor for the requested year."""

    def __init__(self, journal_id: str, year: int):
        self.journal_id = journal_id
        self.year = year
        super().__init__(f"journal {journal_id!r} has no impact factor usable for {year}")


class UnrankedJournal(CollabmapError):
    """A publication's journal is absent from the percentile-rank index."""


class UnknownResearcher(CollabmapError):
    """A researcher identifier is not on the roster."""


class EmptySector(CollabmapError):
    """A ranking was requested over an empty population."""


class EmptySet(CollabmapError):
    """An aggregate was requested over an empty publication set."""


class NoAcademicAuthors(CollabmapError):
    """A publication has no roster-linked author where one is required."""

    def __init__(self, pub_id: str):
        self.pub_id = pub_id
        super().__init__(f"publication {pub_id!r} has no roster-linked author")


# -- statistics ----------------------------------------------------------------

class StatsError(CollabmapError):
    """Base class for statistics kernel errors."""


class EmptySample(StatsError):
    """A sample with zero observations was supplied."""


class InsufficientData(StatsError):
    """Too few observations to run the requested test."""


class LengthMismatch(StatsError):
    """Paired samples differ in length."""


class ZeroVariance(StatsError):
    """A test statistic is undefined because the variance term is zero."""


class InvalidDf(StatsError):
    """Degrees of freedom must be a positive finite number."""


class InsufficientSectors(StatsError):
    """Fewer than two comparison units survive the exclusion thresholds."""


class UnknownGrouping(StatsError):
    """A comparison grouping name is not recognized."""


class UnknownIndicator(StatsError):
    """An indicator name is not valid for the requested grouping."""


# -- reporting -----------------------------------------------------------------

class UnknownMetric(CollabmapError):
    """A ranking metric name is not recognized."""


# -- synthetic data harness -----------------------------------------------------

class InvalidConfig(CollabmapError):
    """Synthetic corpus configuration violates its constraints."""
