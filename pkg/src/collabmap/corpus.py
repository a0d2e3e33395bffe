"""Domain model and loaders for the publication corpus.

A data directory holds five files: ``taxonomy.csv``, ``organizations.csv``,
``journals.csv``, ``roster.csv`` and ``publications.jsonl``. Loading applies
the observation-window filter first, then enforces referential integrity on
the retained publications, so the returned corpus is closed: every identifier
it mentions resolves.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .errors import (
    CollabmapError,
    DanglingReference,
    DanglingUda,
    DuplicateId,
    EmptyCorpus,
    InvariantViolation,
    MissingFile,
    ParseError,
)

ORG_KINDS = frozenset(
    {"university", "private_firm", "public_org", "consortium", "foundation", "foreign_org"}
)

DEFAULT_WINDOW = (2001, 2003)

TAXONOMY_FIELDS = ["sds_id", "sds_name", "uda_id", "uda_name"]
ORGANIZATION_FIELDS = ["org_id", "canonical_name", "kind", "country"]
JOURNAL_FIELDS = ["journal_id", "name", "year", "impact_factor", "sci_categories"]
ROSTER_FIELDS = ["researcher_id", "full_name", "university_org_id", "sds_id"]


@dataclass(frozen=True)
class SectorEntry:
    """One scientific disciplinary sector and the area it belongs to."""

    sds_id: str
    sds_name: str
    uda_id: str
    uda_name: str


@dataclass(frozen=True)
class Taxonomy:
    """Sector classification: each sector maps to exactly one disciplinary area."""

    sectors: dict[str, SectorEntry]
    uda_names: dict[str, str]

    def uda_of(self, sds_id: str) -> str:
        return self.sectors[sds_id].uda_id

    def __len__(self) -> int:
        return len(self.sectors)


@dataclass(frozen=True)
class Organization:
    org_id: str
    canonical_name: str
    kind: str  # one of ORG_KINDS
    country: str  # ISO 3166 alpha-2


@dataclass(frozen=True)
class JournalYear:
    """A journal's record for one year: impact factor and category codes."""

    journal_id: str
    name: str
    year: int
    impact_factor: float
    sci_categories: tuple[str, ...]


@dataclass(frozen=True)
class Researcher:
    researcher_id: str
    full_name: str
    university_org_id: str
    sds_id: str


@dataclass(frozen=True)
class AuthorRef:
    """One byline entry. researcher_id is None for authors not on the roster."""

    raw_name: str
    researcher_id: str | None
    org_id: str


@dataclass(frozen=True)
class Publication:
    pub_id: str
    year: int
    journal_id: str
    authors: tuple[AuthorRef, ...]
    address_org_ids: tuple[str, ...]  # sorted, deduplicated


@dataclass(frozen=True)
class Corpus:
    """A loaded, referentially closed publication corpus.

    ``publications`` is sorted by pub_id, and address lists are sorted sets,
    so two corpora loaded from row-permuted copies of the same files compare
    equal. ``window_excluded`` counts publications dropped by the year filter.
    """

    taxonomy: Taxonomy
    organizations: dict[str, Organization]
    journals: dict[tuple[str, int], JournalYear]
    researchers: dict[str, Researcher]
    publications: tuple[Publication, ...]
    window: tuple[int, int]
    window_excluded: int
    # derived lookup, excluded from equality
    _years_by_journal: dict[str, tuple[int, ...]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        by_journal: dict[str, list[int]] = {}
        for jid, year in self.journals:
            by_journal.setdefault(jid, []).append(year)
        object.__setattr__(
            self,
            "_years_by_journal",
            {jid: tuple(sorted(years)) for jid, years in by_journal.items()},
        )

    @property
    def journal_ids(self) -> frozenset[str]:
        return frozenset(self._years_by_journal)

    def journal_years(self, journal_id: str) -> tuple[int, ...]:
        return self._years_by_journal.get(journal_id, ())

    def effective_journal(self, journal_id: str, year: int) -> JournalYear | None:
        """The journal record an article of the given year uses.

        Exact year if present, otherwise the nearest year inside the window
        (ties break toward the earlier year). None when nothing is usable.
        """
        rec = self.journals.get((journal_id, year))
        if rec is not None:
            return rec
        lo, hi = self.window
        candidates = [y for y in self.journal_years(journal_id) if lo <= y <= hi]
        if not candidates:
            return None
        best = min(candidates, key=lambda y: (abs(y - year), y))
        return self.journals[(journal_id, best)]


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    subject: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[ValidationIssue, ...]
    warnings: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


def _read_csv_rows(path: Path, fields: list[str]) -> Iterator[tuple[int, dict[str, str]]]:
    """Yield (line_number, row) from a strict-header CSV file."""
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ParseError(str(path), 1, "empty file")
        if list(reader.fieldnames) != fields:
            raise ParseError(
                str(path), 1,
                f"expected header {','.join(fields)}, got {','.join(reader.fieldnames)}",
            )
        for row in reader:
            if None in row or any(v is None for v in row.values()):
                raise ParseError(str(path), reader.line_num, "wrong number of fields")
            yield reader.line_num, row


def load_taxonomy(path: str | Path) -> Taxonomy:
    """Load the sector/area classification table."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(str(path))
    sectors: dict[str, SectorEntry] = {}
    uda_names: dict[str, str] = {}
    for lineno, row in _read_csv_rows(path, TAXONOMY_FIELDS):
        sds_id = row["sds_id"].strip()
        sds_name = row["sds_name"].strip()
        if not sds_id or not sds_name:
            raise ParseError(str(path), lineno, "sds_id and sds_name must be non-empty")
        uda_id = row["uda_id"].strip()
        uda_name = row["uda_name"].strip()
        if not uda_id or not uda_name:
            raise DanglingUda(sds_id, "missing area id or name")
        if sds_id in sectors:
            raise DuplicateId("sds_id", sds_id)
        if uda_id in uda_names and uda_names[uda_id] != uda_name:
            raise DanglingUda(
                sds_id, f"area {uda_id!r} named both {uda_names[uda_id]!r} and {uda_name!r}"
            )
        uda_names[uda_id] = uda_name
        sectors[sds_id] = SectorEntry(sds_id, sds_name, uda_id, uda_name)
    if not sectors:
        raise ParseError(str(path), 1, "taxonomy has no rows")
    return Taxonomy(sectors=sectors, uda_names=uda_names)


def _load_organizations(path: Path) -> dict[str, Organization]:
    orgs: dict[str, Organization] = {}
    for lineno, row in _read_csv_rows(path, ORGANIZATION_FIELDS):
        org_id = row["org_id"].strip()
        name = row["canonical_name"].strip()
        kind = row["kind"].strip()
        country = row["country"].strip()
        if not org_id or not name:
            raise ParseError(str(path), lineno, "org_id and canonical_name must be non-empty")
        if kind not in ORG_KINDS:
            raise ParseError(str(path), lineno, f"unknown organization kind {kind!r}")
        if len(country) != 2 or not country.isalpha() or not country.isupper():
            raise ParseError(str(path), lineno, f"country must be an alpha-2 code, got {country!r}")
        if org_id in orgs:
            raise DuplicateId("org_id", org_id)
        orgs[org_id] = Organization(org_id, name, kind, country)
    return orgs


def _load_journals(path: Path) -> dict[tuple[str, int], JournalYear]:
    journals: dict[tuple[str, int], JournalYear] = {}
    for lineno, row in _read_csv_rows(path, JOURNAL_FIELDS):
        journal_id = row["journal_id"].strip()
        name = row["name"].strip()
        if not journal_id or not name:
            raise ParseError(str(path), lineno, "journal_id and name must be non-empty")
        try:
            year = int(row["year"])
        except ValueError:
            raise ParseError(str(path), lineno, f"year must be an integer, got {row['year']!r}")
        try:
            impact_factor = float(row["impact_factor"])
        except ValueError:
            raise ParseError(
                str(path), lineno, f"impact_factor must be a number, got {row['impact_factor']!r}"
            )
        if not impact_factor >= 0:
            raise ParseError(str(path), lineno, "impact_factor must be >= 0")
        cats = [c.strip() for c in row["sci_categories"].split(";") if c.strip()]
        if not cats:
            raise ParseError(str(path), lineno, "sci_categories must list at least one code")
        if len(set(cats)) != len(cats):
            raise ParseError(str(path), lineno, "duplicate category code on one journal row")
        key = (journal_id, year)
        if key in journals:
            raise DuplicateId("journal_id/year", f"{journal_id}/{year}")
        journals[key] = JournalYear(journal_id, name, year, impact_factor, tuple(sorted(cats)))
    return journals


def _load_roster(
    path: Path, organizations: dict[str, Organization], taxonomy: Taxonomy
) -> dict[str, Researcher]:
    roster: dict[str, Researcher] = {}
    for lineno, row in _read_csv_rows(path, ROSTER_FIELDS):
        researcher_id = row["researcher_id"].strip()
        full_name = row["full_name"].strip()
        university_org_id = row["university_org_id"].strip()
        sds_id = row["sds_id"].strip()
        if not researcher_id or not full_name:
            raise ParseError(str(path), lineno, "researcher_id and full_name must be non-empty")
        if researcher_id in roster:
            raise DuplicateId("researcher_id", researcher_id)
        org = organizations.get(university_org_id)
        if org is None:
            raise DanglingReference(
                "organization", university_org_id, f"roster entry {researcher_id}"
            )
        if org.kind != "university":
            raise InvariantViolation(
                f"roster entry {researcher_id}: organization {university_org_id!r} "
                f"has kind {org.kind!r}, expected 'university'"
            )
        if sds_id not in taxonomy.sectors:
            raise DanglingReference("sds", sds_id, f"roster entry {researcher_id}")
        roster[researcher_id] = Researcher(researcher_id, full_name, university_org_id, sds_id)
    return roster


def _parse_publication(path: Path, lineno: int, line: str) -> Publication:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(str(path), lineno, f"invalid JSON: {exc.msg}")
    if not isinstance(obj, dict):
        raise ParseError(str(path), lineno, "publication record must be an object")

    pub_id = obj.get("pub_id")
    if not isinstance(pub_id, str) or not pub_id:
        raise ParseError(str(path), lineno, "pub_id must be a non-empty string")
    year = obj.get("year")
    if isinstance(year, bool) or not isinstance(year, int):
        raise ParseError(str(path), lineno, "year must be an integer")
    journal_id = obj.get("journal_id")
    if not isinstance(journal_id, str) or not journal_id:
        raise ParseError(str(path), lineno, "journal_id must be a non-empty string")

    raw_authors = obj.get("authors")
    if not isinstance(raw_authors, list) or not raw_authors:
        raise ParseError(str(path), lineno, "authors must be a non-empty list")
    authors: list[AuthorRef] = []
    for entry in raw_authors:
        if not isinstance(entry, dict):
            raise ParseError(str(path), lineno, "author entries must be objects")
        raw_name = entry.get("raw_name")
        org_id = entry.get("org_id")
        researcher_id = entry.get("researcher_id")
        if not isinstance(raw_name, str) or not raw_name:
            raise ParseError(str(path), lineno, "author raw_name must be a non-empty string")
        if not isinstance(org_id, str) or not org_id:
            raise ParseError(str(path), lineno, "author org_id must be a non-empty string")
        if researcher_id is not None and (not isinstance(researcher_id, str) or not researcher_id):
            raise ParseError(str(path), lineno, "author researcher_id must be null or a string")
        authors.append(AuthorRef(raw_name, researcher_id, org_id))

    raw_addresses = obj.get("address_org_ids")
    if not isinstance(raw_addresses, list):
        raise ParseError(str(path), lineno, "address_org_ids must be a list")
    if not all(isinstance(a, str) and a for a in raw_addresses):
        raise ParseError(str(path), lineno, "address_org_ids must be non-empty strings")

    return Publication(
        pub_id=pub_id,
        year=year,
        journal_id=journal_id,
        authors=tuple(authors),
        address_org_ids=tuple(sorted(set(raw_addresses))),
    )


def _load_publications(path: Path) -> list[Publication]:
    pubs: list[Publication] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            pub = _parse_publication(path, lineno, line)
            if pub.pub_id in seen:
                raise DuplicateId("pub_id", pub.pub_id)
            seen.add(pub.pub_id)
            pubs.append(pub)
    return pubs


def _hard_errors(corpus: Corpus) -> Iterator[CollabmapError]:
    """Referential-integrity violations, in deterministic order.

    Publications are scanned in pub_id order; a loaded corpus yields nothing.
    """
    known_journals = corpus.journal_ids
    for pub in corpus.publications:
        if pub.journal_id not in known_journals:
            yield DanglingReference("journal", pub.journal_id, f"publication {pub.pub_id}")
        elif corpus.effective_journal(pub.journal_id, pub.year) is None:
            yield DanglingReference(
                "journal_year", f"{pub.journal_id}@{pub.year}", f"publication {pub.pub_id}"
            )
        for org_id in pub.address_org_ids:
            if org_id not in corpus.organizations:
                yield DanglingReference("organization", org_id, f"publication {pub.pub_id}")
        address_set = set(pub.address_org_ids)
        for author in pub.authors:
            if author.org_id not in corpus.organizations:
                yield DanglingReference(
                    "organization", author.org_id,
                    f"author {author.raw_name!r} of {pub.pub_id}",
                )
            if author.researcher_id is None:
                continue
            researcher = corpus.researchers.get(author.researcher_id)
            if researcher is None:
                yield DanglingReference(
                    "researcher", author.researcher_id, f"publication {pub.pub_id}"
                )
            elif researcher.university_org_id not in address_set:
                yield InvariantViolation(
                    f"publication {pub.pub_id}: author {author.researcher_id} belongs to "
                    f"{researcher.university_org_id!r}, which is not in the address list"
                )


def load_corpus(data_dir: str | Path, window: tuple[int, int] = DEFAULT_WINDOW) -> Corpus:
    """Load a corpus from a data directory and enforce its invariants.

    Publications with years outside ``window`` are dropped before any
    referential check; the number dropped is recorded on the corpus.
    """
    lo, hi = window
    if lo > hi:
        raise ValueError(f"window start {lo} is after window end {hi}")
    data_dir = Path(data_dir)
    paths = {
        name: data_dir / name
        for name in (
            "taxonomy.csv", "organizations.csv", "journals.csv",
            "roster.csv", "publications.jsonl",
        )
    }
    for path in paths.values():
        if not path.is_file():
            raise MissingFile(str(path))

    taxonomy = load_taxonomy(paths["taxonomy.csv"])
    organizations = _load_organizations(paths["organizations.csv"])
    journals = _load_journals(paths["journals.csv"])
    researchers = _load_roster(paths["roster.csv"], organizations, taxonomy)

    all_pubs = _load_publications(paths["publications.jsonl"])
    retained = sorted((p for p in all_pubs if lo <= p.year <= hi), key=lambda p: p.pub_id)
    if not retained:
        raise EmptyCorpus(f"no publications fall inside the window {lo}-{hi}")

    corpus = Corpus(
        taxonomy=taxonomy,
        organizations=organizations,
        journals=journals,
        researchers=researchers,
        publications=tuple(retained),
        window=(lo, hi),
        window_excluded=len(all_pubs) - len(retained),
    )
    for error in _hard_errors(corpus):
        raise error
    return corpus


def validate_corpus(corpus: Corpus) -> ValidationReport:
    """Re-check corpus invariants and collect advisory warnings.

    The result is deterministic (issues sorted by code, then subject) and
    running it twice yields equal reports. A corpus produced by
    :func:`load_corpus` has no errors; warnings flag unlinked authors and
    organizations nothing references.
    """
    errors = []
    for exc in _hard_errors(corpus):
        entity = getattr(exc, "entity", "")
        ref_id = getattr(exc, "ref_id", "")
        subject = f"{entity}:{ref_id}" if entity else str(exc)
        errors.append(ValidationIssue(type(exc).__name__, subject, str(exc)))

    warnings = []
    referenced: set[str] = set()
    for pub in corpus.publications:
        referenced.update(pub.address_org_ids)
        for author in pub.authors:
            referenced.add(author.org_id)
            if author.researcher_id is None:
                warnings.append(
                    ValidationIssue(
                        "UnlinkedAuthor",
                        f"{pub.pub_id}:{author.raw_name}",
                        f"author {author.raw_name!r} of {pub.pub_id} has no roster link",
                    )
                )
    for researcher in corpus.researchers.values():
        referenced.add(researcher.university_org_id)
    for org_id in corpus.organizations:
        if org_id not in referenced:
            warnings.append(
                ValidationIssue(
                    "UnreferencedOrganization",
                    org_id,
                    f"organization {org_id!r} is never referenced",
                )
            )

    return ValidationReport(
        errors=tuple(sorted(errors, key=lambda i: (i.code, i.subject, i.detail))),
        warnings=tuple(sorted(warnings, key=lambda i: (i.code, i.subject, i.detail))),
    )
