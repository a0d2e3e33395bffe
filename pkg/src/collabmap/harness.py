"""Synthetic corpus generation and naive verification oracles.

The generator is fully determined by its seed: it draws from SplitMix64, a
documented 64-bit generator, in a fixed order, so equal configs produce
byte-identical data directories.

The oracles re-derive collaboration counts and per-researcher indicators by
brute force, parsing the raw files directly. They share no logic with the
analysis modules: collaboration pairs are enumerated one by one, and
percentiles are computed by quadratic pairwise counting.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .collab import CASE_M_N, CASE_M_ONE, CASE_ONE_N, CASE_ONE_ONE, CollabSummary
from .corpus import DEFAULT_WINDOW
from .errors import EmptySample, InvalidConfig, MissingFile

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator (Steele, Lea, Flood 2014).

    next_u64 advances the state by the golden-gamma constant and scrambles it
    with two xor-multiply rounds. random() keeps the top 53 bits; below(n) is
    next_u64() % n, whose modulo bias is negligible for n far below 2**64.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def below(self, n: int) -> int:
        return self.next_u64() % n

    def distinct(self, n: int, k: int) -> list[int]:
        """k distinct indices in [0, n), in draw order."""
        if k > n:
            raise ValueError(f"cannot draw {k} distinct values from {n}")
        if k > n // 2:
            # dense case: partial Fisher-Yates
            pool = list(range(n))
            for i in range(k):
                j = i + self.below(n - i)
                pool[i], pool[j] = pool[j], pool[i]
            return pool[:k]
        chosen: list[int] = []
        seen = set()
        while len(chosen) < k:
            v = self.below(n)
            if v not in seen:
                seen.add(v)
                chosen.append(v)
        return chosen


_CATEGORY_POOL = (
    "ACOUSTICS", "BIOPHYSICS", "CATALYSIS", "DYNAMICS",
    "ENERGETICS", "FLUIDICS", "GENOMICS", "HYDROLOGY",
)

_UDA_NAMES = ("Engineering", "Chemistry", "Biology", "Physics")


@dataclass(frozen=True)
class SynthConfig:
    """Shape of a synthetic corpus; every field bounds a generation draw."""

    seed: int
    n_pubs: int
    n_universities: int = 12
    n_firms: int = 20
    n_public_orgs: int = 6
    n_researchers: int = 120
    n_journals: int = 30
    industry_rate: float = 0.25
    max_authors: int = 6
    year_min: int = DEFAULT_WINDOW[0]
    year_max: int = DEFAULT_WINDOW[1]

    def __post_init__(self) -> None:
        counts = {
            "n_pubs": self.n_pubs,
            "n_universities": self.n_universities,
            "n_firms": self.n_firms,
            "n_researchers": self.n_researchers,
            "n_journals": self.n_journals,
            "max_authors": self.max_authors,
        }
        for name, value in counts.items():
            if value < 1:
                raise InvalidConfig(f"{name} must be >= 1, got {value}")
        if self.n_public_orgs < 0:
            raise InvalidConfig("n_public_orgs must be >= 0")
        if not 0.0 <= self.industry_rate <= 1.0:
            raise InvalidConfig(f"industry_rate must be in [0, 1], got {self.industry_rate}")
        if self.year_min > self.year_max:
            raise InvalidConfig("year_min must not exceed year_max")


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def generate(config: SynthConfig, out_dir: str | Path) -> Path:
    """Write a synthetic data directory, fully determined by the config.

    Draw order per run: journal categories and impact factors, then roster
    assignments, then one publication at a time (year, journal, industry
    flag, author picks, extra address orgs). Organizations and the taxonomy
    are derived without draws. Every 5th firm is foreign; industry
    publications gain 1-2 domestic firms, other publications may gain a
    public organization, a foreign firm, or a second university. Generated
    directories always load and validate without errors.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = SplitMix64(config.seed)

    # taxonomy: no draws
    n_sds = min(12, max(2, config.n_researchers))
    n_uda = min(4, n_sds)
    sds_ids = [f"S{i + 1:03d}" for i in range(n_sds)]
    taxonomy_rows = []
    for i, sds_id in enumerate(sds_ids):
        uda_index = i % n_uda
        taxonomy_rows.append(
            [sds_id, f"Sector {i + 1:03d}", f"A{uda_index + 1:02d}", _UDA_NAMES[uda_index]]
        )
    _write_csv(out_dir / "taxonomy.csv",
               ["sds_id", "sds_name", "uda_id", "uda_name"], taxonomy_rows)

    # organizations: no draws; every 5th firm is foreign
    university_ids = [f"U{i + 1:03d}" for i in range(config.n_universities)]
    firm_ids = [f"F{i + 1:03d}" for i in range(config.n_firms)]
    firm_country = ["DE" if i % 5 == 4 else "IT" for i in range(config.n_firms)]
    public_kinds = ("public_org", "consortium", "foundation")
    org_rows = []
    for i, org_id in enumerate(university_ids):
        org_rows.append([org_id, f"Synthetic University {i + 1:03d}", "university", "IT"])
    for i, org_id in enumerate(firm_ids):
        org_rows.append([org_id, f"Synthetic Firm {i + 1:03d}", "private_firm", firm_country[i]])
    public_ids = [f"P{i + 1:03d}" for i in range(config.n_public_orgs)]
    for i, org_id in enumerate(public_ids):
        kind = public_kinds[i % 3]
        org_rows.append([org_id, f"Synthetic Body {i + 1:03d}", kind, "IT"])
    _write_csv(out_dir / "organizations.csv",
               ["org_id", "canonical_name", "kind", "country"], org_rows)

    # journals: per journal, 1-3 distinct categories, then one IF per year
    years = list(range(config.year_min, config.year_max + 1))
    journal_ids = [f"J{i + 1:03d}" for i in range(config.n_journals)]
    journal_rows = []
    for i, journal_id in enumerate(journal_ids):
        n_cats = 1 + rng.below(3)
        cat_idx = rng.distinct(len(_CATEGORY_POOL), n_cats)
        cats = ";".join(_CATEGORY_POOL[c] for c in sorted(cat_idx))
        for year in years:
            impact = round(0.1 + rng.random() * 9.9, 3)
            journal_rows.append(
                [journal_id, f"Synthetic Journal {i + 1:03d}", str(year), f"{impact:.3f}", cats]
            )
    _write_csv(out_dir / "journals.csv",
               ["journal_id", "name", "year", "impact_factor", "sci_categories"], journal_rows)

    # roster: university and sector per researcher
    researcher_ids = [f"R{i + 1:05d}" for i in range(config.n_researchers)]
    researcher_univ = []
    researcher_sds = []
    roster_rows = []
    for i, researcher_id in enumerate(researcher_ids):
        univ = university_ids[rng.below(config.n_universities)]
        sds = sds_ids[rng.below(n_sds)]
        researcher_univ.append(univ)
        researcher_sds.append(sds)
        roster_rows.append([researcher_id, f"Synthetic Researcher {i + 1:05d}", univ, sds])
    _write_csv(out_dir / "roster.csv",
               ["researcher_id", "full_name", "university_org_id", "sds_id"], roster_rows)

    domestic_firm_idx = [i for i in range(config.n_firms) if firm_country[i] == "IT"]
    foreign_firm_idx = [i for i in range(config.n_firms) if firm_country[i] == "DE"]

    pub_lines = []
    for p in range(config.n_pubs):
        pub_id = f"PUB{p + 1:06d}"
        year = config.year_min + rng.below(len(years))
        journal_id = journal_ids[rng.below(config.n_journals)]
        industry = rng.random() < config.industry_rate

        n_acad = 1 + rng.below(min(config.max_authors, config.n_researchers))
        picked = rng.distinct(config.n_researchers, n_acad)
        authors = []
        addresses = set()
        for idx in picked:
            authors.append(
                {
                    "raw_name": f"Synthetic Researcher {idx + 1:05d}",
                    "researcher_id": researcher_ids[idx],
                    "org_id": researcher_univ[idx],
                }
            )
            addresses.add(researcher_univ[idx])

        if industry and domestic_firm_idx:
            n_firm = 1 + rng.below(min(2, len(domestic_firm_idx)))
            for slot, pos in enumerate(rng.distinct(len(domestic_firm_idx), n_firm)):
                firm = firm_ids[domestic_firm_idx[pos]]
                addresses.add(firm)
                authors.append(
                    {
                        "raw_name": f"Industry Author {p + 1:06d}-{slot + 1}",
                        "researcher_id": None,
                        "org_id": firm,
                    }
                )
        else:
            extra = rng.below(4)
            if extra == 1 and public_ids:
                addresses.add(public_ids[rng.below(len(public_ids))])
            elif extra == 2 and foreign_firm_idx:
                addresses.add(firm_ids[foreign_firm_idx[rng.below(len(foreign_firm_idx))]])
            elif extra == 3:
                other = university_ids[rng.below(config.n_universities)]
                addresses.add(other)

        record = {
            "pub_id": pub_id,
            "year": year,
            "journal_id": journal_id,
            "authors": authors,
            "address_org_ids": sorted(addresses),
        }
        pub_lines.append(json.dumps(record, ensure_ascii=True))

    (out_dir / "publications.jsonl").write_text(
        "\n".join(pub_lines) + "\n", encoding="utf-8"
    )
    return out_dir


# -- oracles -------------------------------------------------------------------------
#
# Everything below reads the raw files with csv/json directly and recomputes
# results naively. Intentionally no imports from the analysis modules.

def _read_raw(data_dir: str | Path) -> dict:
    data_dir = Path(data_dir)
    for name in ("organizations.csv", "journals.csv", "roster.csv", "publications.jsonl"):
        if not (data_dir / name).is_file():
            raise MissingFile(str(data_dir / name))

    org_kind = {}
    org_country = {}
    with (data_dir / "organizations.csv").open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            org_kind[row["org_id"]] = row["kind"]
            org_country[row["org_id"]] = row["country"]

    journal_rows = []
    with (data_dir / "journals.csv").open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            journal_rows.append(
                {
                    "journal_id": row["journal_id"],
                    "year": int(row["year"]),
                    "impact_factor": float(row["impact_factor"]),
                    "categories": [c.strip() for c in row["sci_categories"].split(";") if c.strip()],
                }
            )

    roster = {}
    with (data_dir / "roster.csv").open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            roster[row["researcher_id"]] = row["sds_id"]

    pubs = []
    with (data_dir / "publications.jsonl").open(encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                pubs.append(json.loads(line))

    return {
        "org_kind": org_kind,
        "org_country": org_country,
        "journal_rows": journal_rows,
        "roster": roster,
        "pubs": pubs,
    }


def _in_window(pub: dict, window: tuple[int, int]) -> bool:
    return window[0] <= pub["year"] <= window[1]


def oracle_collab_counts(
    data_dir: str | Path,
    window: tuple[int, int] = DEFAULT_WINDOW,
    home_country: str = "IT",
) -> CollabSummary:
    """Brute-force collaboration totals from the raw files.

    Every (university, domestic firm) pair of every in-window publication is
    enumerated explicitly and tallied.
    """
    raw = _read_raw(data_dir)
    org_kind = raw["org_kind"]
    org_country = raw["org_country"]

    cases = (CASE_ONE_ONE, CASE_M_ONE, CASE_ONE_N, CASE_M_N)
    articles = {case: 0 for case in cases}
    collaborations = {case: 0 for case in cases}
    for pub in raw["pubs"]:
        if not _in_window(pub, window):
            continue
        universities = []
        firms = []
        for org_id in set(pub["address_org_ids"]):
            if org_kind[org_id] == "university":
                universities.append(org_id)
            elif org_kind[org_id] == "private_firm" and org_country[org_id] == home_country:
                firms.append(org_id)
        pairs = []
        for univ in universities:
            for firm in firms:
                pairs.append((univ, firm))
        if not pairs:
            continue  # case: none
        if len(universities) == 1 and len(firms) == 1:
            case = CASE_ONE_ONE
        elif len(firms) == 1:
            case = CASE_M_ONE
        elif len(universities) == 1:
            case = CASE_ONE_N
        else:
            case = CASE_M_N
        articles[case] += 1
        collaborations[case] += len(pairs)

    return CollabSummary(
        total_collaborations=sum(collaborations.values()),
        industry_articles=sum(articles.values()),
        articles_by_case=articles,
        collaborations_by_case=collaborations,
    )


def oracle_percentiles(values: Sequence[float]) -> list[float]:
    """Quadratic midrank percentiles: count below and equal, pair by pair."""
    n = len(values)
    if n == 0:
        raise EmptySample("cannot rank an empty distribution")
    out = []
    for v in values:
        below = 0
        equal = 0
        for w in values:
            if w < v:
                below += 1
            elif w == v:
                equal += 1
        out.append(100.0 * (below + 0.5 * equal) / n)
    return out


def _oracle_journal_record(raw: dict, journal_id: str, year: int,
                           window: tuple[int, int]) -> dict | None:
    rows = [r for r in raw["journal_rows"] if r["journal_id"] == journal_id]
    exact = [r for r in rows if r["year"] == year]
    if exact:
        return exact[0]
    in_window = [r for r in rows if window[0] <= r["year"] <= window[1]]
    if not in_window:
        return None
    return min(in_window, key=lambda r: (abs(r["year"] - year), r["year"]))


def oracle_article_ifpr(
    data_dir: str | Path, window: tuple[int, int] = DEFAULT_WINDOW
) -> dict[str, float]:
    """Per-article impact percentile, recomputed naively per year."""
    raw = _read_raw(data_dir)
    pubs = [p for p in raw["pubs"] if _in_window(p, window)]
    journal_ids = sorted({r["journal_id"] for r in raw["journal_rows"]})

    result = {}
    for year in sorted({p["year"] for p in pubs}):
        records = {}
        for journal_id in journal_ids:
            record = _oracle_journal_record(raw, journal_id, year, window)
            if record is not None:
                records[journal_id] = record
        categories = sorted({c for r in records.values() for c in r["categories"]})
        rank: dict[tuple[str, str], float] = {}
        for cat in categories:
            members = sorted(j for j, r in records.items() if cat in r["categories"])
            pcts = oracle_percentiles([records[j]["impact_factor"] for j in members])
            for journal_id, pct in zip(members, pcts):
                rank[(journal_id, cat)] = pct
        for pub in pubs:
            if pub["year"] != year:
                continue
            cats = sorted(records[pub["journal_id"]]["categories"])
            total = 0.0
            for cat in cats:
                total += rank[(pub["journal_id"], cat)]
            result[pub["pub_id"]] = total / len(cats)
    return result


def oracle_researcher_outputs(
    data_dir: str | Path, window: tuple[int, int] = DEFAULT_WINDOW
) -> dict[str, int]:
    """Publication counts per roster researcher, by direct scan."""
    raw = _read_raw(data_dir)
    counts = {rid: 0 for rid in raw["roster"]}
    for pub in raw["pubs"]:
        if not _in_window(pub, window):
            continue
        linked = {a["researcher_id"] for a in pub["authors"] if a["researcher_id"] is not None}
        for rid in linked:
            counts[rid] += 1
    return counts


def oracle_researcher_fss(
    data_dir: str | Path, window: tuple[int, int] = DEFAULT_WINDOW
) -> dict[str, float]:
    """Fractional scientific strength per researcher, by direct scan."""
    raw = _read_raw(data_dir)
    ifpr = oracle_article_ifpr(data_dir, window)
    totals = {rid: 0.0 for rid in raw["roster"]}
    for pub in raw["pubs"]:
        if not _in_window(pub, window):
            continue
        linked = {a["researcher_id"] for a in pub["authors"] if a["researcher_id"] is not None}
        for rid in sorted(linked):
            totals[rid] += (ifpr[pub["pub_id"]] / 100.0) / len(pub["authors"])
    return totals
