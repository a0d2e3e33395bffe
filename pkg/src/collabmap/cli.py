"""Command line interface.

Exit codes: 0 on success, 1 on data/validation errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import collab, report, stats
from .corpus import DEFAULT_WINDOW, load_corpus, validate_corpus
from .errors import CollabmapError
from .harness import SynthConfig, generate
from .indicators import LEVEL_SDS, LEVEL_UDA

_SUBSETS = {
    "all": collab.SELECTOR_ALL,
    "collab": collab.SELECTOR_EXTRAMURAL,
    "industry": collab.SELECTOR_INDUSTRY,
}


def _add_corpus_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data-dir", required=True, help="directory with the corpus files")
    parser.add_argument("--year-min", type=int, default=DEFAULT_WINDOW[0],
                        help="first year of the observation window")
    parser.add_argument("--year-max", type=int, default=DEFAULT_WINDOW[1],
                        help="last year of the observation window")
    parser.add_argument("--home-country", default=collab.HOME_COUNTRY,
                        help="country code a firm must have to count as industry")


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json", "md"), default="csv")
    parser.add_argument("--out", help="write output to this file instead of stdout")


def _load(args: argparse.Namespace):
    return load_corpus(args.data_dir, window=(args.year_min, args.year_max))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _cmd_validate(args: argparse.Namespace) -> int:
    corpus = _load(args)
    rep = validate_corpus(corpus)
    lo, hi = corpus.window
    print(f"publications: {len(corpus.publications)} "
          f"({corpus.window_excluded} excluded by window {lo}-{hi})")
    print(f"organizations: {len(corpus.organizations)}")
    print(f"journals: {len(corpus.journal_ids)}")
    print(f"researchers: {len(corpus.researchers)}")
    print(f"errors: {len(rep.errors)}")
    for issue in rep.errors:
        print(f"  {issue.code} {issue.subject}")
    print(f"warnings: {len(rep.warnings)}")
    for issue in rep.warnings:
        print(f"  {issue.code} {issue.subject}")
    return 0 if rep.ok else 1


def _cmd_map(args: argparse.Namespace) -> int:
    corpus = _load(args)
    table = report.build_rank_table(
        corpus,
        level=args.level,
        metric=args.metric,
        k=args.top,
        home_country=args.home_country,
    )
    _emit(report.render(table, args.format), args.out)
    return 0


def _cmd_edges(args: argparse.Namespace) -> int:
    corpus = _load(args)
    _emit(report.edges_csv(corpus, home_country=args.home_country), args.out)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    corpus = _load(args)
    table = report.build_comparison_table(
        corpus,
        args.grouping,
        args.indicator,
        home_country=args.home_country,
        min_collab_pubs=args.min_collab_pubs,
    )
    _emit(report.render(table, args.format), args.out)
    return 0


def _cmd_multidisc(args: argparse.Namespace) -> int:
    corpus = _load(args)
    table = report.build_multidisc_table(
        corpus, _SUBSETS[args.subset], home_country=args.home_country
    )
    _emit(report.render(table, args.format), args.out)
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    config = SynthConfig(
        seed=args.seed,
        n_pubs=args.pubs,
        n_universities=args.universities,
        n_firms=args.firms,
        n_public_orgs=args.public_orgs,
        n_researchers=args.researchers,
        n_journals=args.journals,
        industry_rate=args.industry_rate,
        max_authors=args.max_authors,
        year_min=args.year_min,
        year_max=args.year_max,
    )
    out = generate(config, args.out)
    print(f"wrote synthetic corpus to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collabmap",
        description="Map university-industry collaboration in a publication corpus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="load a corpus and report problems")
    _add_corpus_options(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("map", help="rank sectors by industry co-authorship intensity")
    _add_corpus_options(p)
    p.add_argument("--level", choices=(LEVEL_SDS, LEVEL_UDA), default=LEVEL_SDS)
    p.add_argument("--metric", choices=report.METRICS, default="count")
    p.add_argument("--top", type=int, default=10, help="number of rows to keep")
    _add_output_options(p)
    p.set_defaults(func=_cmd_map)

    p = sub.add_parser("edges", help="export the collaboration edge list as CSV")
    _add_corpus_options(p)
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.set_defaults(func=_cmd_edges)

    p = sub.add_parser("compare", help="run one of the standard comparisons")
    _add_corpus_options(p)
    p.add_argument("--grouping", choices=stats.GROUPINGS, required=True)
    p.add_argument("--indicator", choices=("ifpr", "o", "fss", "ii_sds", "ii_sci"),
                   required=True)
    p.add_argument("--min-collab-pubs", type=int, default=7,
                   help="minimum extramural publications for a sector to qualify")
    p.add_argument("--format", choices=("csv", "json", "md"), default="json")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("multidisc", help="multidisciplinarity indices by scope")
    _add_corpus_options(p)
    p.add_argument("--subset", choices=tuple(_SUBSETS), default="all")
    _add_output_options(p)
    p.set_defaults(func=_cmd_multidisc)

    p = sub.add_parser("synth", help="generate a deterministic synthetic corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pubs", type=int, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--universities", type=int, default=12)
    p.add_argument("--firms", type=int, default=20)
    p.add_argument("--public-orgs", type=int, default=6)
    p.add_argument("--researchers", type=int, default=120)
    p.add_argument("--journals", type=int, default=30)
    p.add_argument("--industry-rate", type=float, default=0.25)
    p.add_argument("--max-authors", type=int, default=6)
    p.add_argument("--year-min", type=int, default=DEFAULT_WINDOW[0])
    p.add_argument("--year-max", type=int, default=DEFAULT_WINDOW[1])
    p.set_defaults(func=_cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CollabmapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
