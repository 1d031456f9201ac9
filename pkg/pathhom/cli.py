"""
Command-line front end.

    python main.py info -i fixture:g_main
    python main.py smoves -i graph.txt --n 3 --dot s3.dot
    python main.py homology -i fixture:g_main --field Q --field F2
    python main.py verify-paper
"""

import argparse
import logging
import sys
from pathlib import Path as FilePath
from typing import Callable, Dict, List, Literal, Optional, Sequence

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError, field_validator, model_validator

from .chain_complex import (OmegaBasis, boundary_entry_report, boundary_matrix, default_n_max,
                            homology_summary, omega_class_basis, omega_general)
from .cochain_algebra import relation_set_general, structure_census
from .config import settings
from .digraph_core import (INFINITY, Digraph, classify_pairs, count_triangles, enumerate_paths,
                           is_multisquare_free, longest_path_length, parse_digraph)
from .errors import DigraphParseError, PathHomologyError, UnknownFixture
from .exact_linalg import FieldDescriptor
from .fixtures import builtin_fixture
from .schemas import (BasisReport, BasisRun, BasisVectorRecord, CochainRun, HomologyRun,
                      InfoReport, ShortMoveRun)
from .short_moves import build_smoves, class_census, classify_components, export_dot, smoves_report
from .verify import RULE, ReplicationSuite, render_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

FIXTURE_PREFIX = "fixture:"
SUBRULE = "-" * 80


class RunConfig(BaseModel):
    command: str
    input: Optional[str] = None
    n_min: int = 0
    n_max: Optional[int] = None
    fields: List[str] = []
    output: Literal["text", "json"] = "text"
    dot: Optional[str] = None
    tsv: Optional[str] = None
    entries: bool = False
    corpus_size: Optional[int] = None

    @field_validator("fields")
    @classmethod
    def fields_parse(cls, value: List[str]) -> List[str]:
        for text in value:
            FieldDescriptor.parse(text)
        return value

    @model_validator(mode="after")
    def check_ranges(self) -> "RunConfig":
        if self.n_min < 0:
            raise ValueError("levels must be non-negative")
        if self.n_max is not None and self.n_max < self.n_min:
            raise ValueError(f"n_max {self.n_max} is below n_min {self.n_min}")
        if self.command == "homology" and self.n_max is not None and self.n_max < 1:
            raise ValueError("homology needs n_max of at least 1")
        if self.command in ("homology", "basis") and not self.fields:
            raise ValueError(f"{self.command} needs at least one field")
        if self.command != "verify-paper" and not self.input:
            raise ValueError(f"{self.command} needs --input")
        return self

    @property
    def field_descriptors(self) -> List[FieldDescriptor]:
        return [FieldDescriptor.parse(text) for text in self.fields]

    def levels(self, g: Digraph) -> range:
        top = self.n_max if self.n_max is not None else default_n_max(g)
        return range(self.n_min, top + 1)


# =============================================================================
# INPUT
# =============================================================================

def load_digraph(source: str) -> Digraph:
    """'fixture:NAME' selects a built-in digraph; anything else is an edge-list file."""
    if source.startswith(FIXTURE_PREFIX):
        return builtin_fixture(source[len(FIXTURE_PREFIX):])
    try:
        text = FilePath(source).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise DigraphParseError(f"{source} is not UTF-8 text (byte {e.start})") from e
    g = parse_digraph(text)
    logger.info(f"Loaded {g} from {source}")
    return g


def _emit(config: RunConfig, text: str, payload: BaseModel) -> None:
    if config.output == "json":
        sys.stdout.write(payload.model_dump_json(indent=2) + "\n")
    else:
        sys.stdout.write(text)


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_info(config: RunConfig) -> int:
    g = load_digraph(config.input)
    pairs = classify_pairs(g)
    free, witness = is_multisquare_free(g)
    longest = longest_path_length(g)
    report = InfoReport(
        vertices=g.num_vertices,
        arrows=g.num_arrows,
        multisquare_free=free,
        multisquare_witness=None if free else witness.describe(g),
        thin_pairs=sum(1 for p in pairs if p.is_thin),
        thick_pairs=sum(1 for p in pairs if p.is_thick),
        multisquare_pairs=sum(1 for p in pairs if p.is_multisquare),
        triangles=count_triangles(g),
        longest_path=None if longest == INFINITY else int(longest),
    )
    lines = [
        f"{report.vertices} vertices, {report.arrows} arrows, "
        f"{'multisquare-free' if free else 'has multisquares'}, {report.thin_pairs} thin pairs",
        f"thick pairs: {report.thick_pairs}, multisquare pairs: {report.multisquare_pairs}, "
        f"triangles: {report.triangles}",
        f"longest path: {'unbounded (directed cycle)' if report.longest_path is None else report.longest_path}",
    ]
    if not free:
        lines.append(f"multisquare: {report.multisquare_witness}")
    _emit(config, "\n".join(lines) + "\n", report)
    return EXIT_OK


def _describe_class(smg, cls) -> str:
    if cls.is_thin:
        kind = "thin"
    elif cls.is_bipartite:
        kind = "thick bipartite"
    else:
        kind = f"thick NON-bipartite (odd cycle length {len(cls.odd_cycle_witness)})"
    shape = ""
    if len(cls.members) > 2 and all(len(smg.adjacency[node]) == 2 for node in cls.members):
        shape = " (cycle)"
    return f"{kind}, {len(cls.members)} nodes{shape}, representative {smg.label(cls.representative)}"


def cmd_smoves(config: RunConfig) -> int:
    g = load_digraph(config.input)
    reports, dots, lines = [], [], []
    for n in config.levels(g):
        smg = build_smoves(g, n)
        classes = classify_components(smg, g)
        census = class_census(classes)
        reports.append(smoves_report(smg))
        dots.append(export_dot(smg))
        lines.append(f"S_{n}: {smg.num_nodes} nodes, {len(smg.edges)} edges, "
                     f"{census['classes']} class{'es' if census['classes'] != 1 else ''} "
                     f"(thin {census['thin']}, thick bipartite {census['thick_bipartite']}, "
                     f"thick non-bipartite {census['thick_non_bipartite']})")
        for k, cls in enumerate(classes, start=1):
            lines.append(f"  class {k}: {_describe_class(smg, cls)}")
    if config.dot:
        FilePath(config.dot).write_text("".join(dots), encoding="utf-8")
        logger.info(f"Wrote DOT to {config.dot}")
    _emit(config, "\n".join(lines) + "\n", ShortMoveRun(levels=reports))
    return EXIT_OK


def _basis_report(g: Digraph, basis: OmegaBasis) -> BasisReport:
    paths = enumerate_paths(g, basis.level)
    tags = basis.class_tags or (None,) * basis.dimension
    return BasisReport(
        level=basis.level,
        field=str(basis.field),
        method=basis.method,
        vectors=[
            BasisVectorRecord(
                terms={g.format_path(paths[i]): basis.field.format(x) for i, x in v.terms},
                class_representative=None if tag is None else g.format_path(paths[tag]),
            )
            for v, tag in zip(basis.vectors, tags)
        ],
    )


def cmd_basis(config: RunConfig) -> int:
    g = load_digraph(config.input)
    with_classes = is_multisquare_free(g)[0]
    reports, lines = [], []
    for n in config.levels(g):
        for f in config.field_descriptors:
            bases = [omega_general(g, n, f)]
            if with_classes:
                bases.append(omega_class_basis(g, n, f))
            for basis in bases:
                reports.append(_basis_report(g, basis))
                lines.append(f"Omega_{n} over {f} ({basis.method}): dimension {basis.dimension}")
                lines += [f"  {v.describe(g)}" for v in basis.vectors]
    _emit(config, "\n".join(lines) + "\n", BasisRun(bases=reports))
    return EXIT_OK


def _dump_boundaries(g: Digraph, f: FieldDescriptor, top: int, directory: str) -> None:
    out = FilePath(directory)
    out.mkdir(parents=True, exist_ok=True)
    for n in range(1, top + 1):
        matrix = boundary_matrix(g, n, f, omega_general(g, n, f), omega_general(g, n - 1, f))
        (out / f"boundary_{f}_{n}.tsv").write_text(matrix.to_tsv(), encoding="utf-8")


def cmd_homology(config: RunConfig) -> int:
    g = load_digraph(config.input)
    n_max = config.n_max if config.n_max is not None else default_n_max(g)
    summaries, entries = [], []
    lines = [RULE, "PATH HOMOLOGY", RULE]
    for f in config.field_descriptors:
        summary = homology_summary(g, f, n_max)
        summaries.append(summary.to_report())
        agreement = {True: "yes", False: "NO", None: "n/a (multisquares)"}[summary.method_agreement]
        lines += [
            f"Field {f}",
            SUBRULE,
            f"omega_dims: {list(summary.omega_dims)}",
            f"ph_dims:    {list(summary.ph_dims)}",
            f"euler:      {summary.euler if summary.bounded else f'undefined (unbounded at n_max={n_max})'}",
            f"class method agreement: {agreement}",
            "",
        ]
        if config.entries and is_multisquare_free(g)[0]:
            report = boundary_entry_report(g, f, n_max)
            entries.append(report)
            for level in report.levels:
                flag = "  NON-UNIT" if level.non_unit else ""
                lines.append(f"  d_{level.level} entries: {level.entries}{flag}")
            lines.append("")
        if config.tsv:
            _dump_boundaries(g, f, len(summary.omega_dims) - 1, config.tsv)
    _emit(config, "\n".join(lines) + "\n", HomologyRun(summaries=summaries, boundary_entries=entries))
    return EXIT_OK


def cmd_cochain(config: RunConfig) -> int:
    g = load_digraph(config.input)
    reports, lines = [], []
    for n in config.levels(g):
        census = structure_census(g, n)
        snf = census['snf']
        reports.append(snf.to_report(g, census['agree']))
        torsion_note = " (torsion!)" if snf.torsion else ""
        agreement = {True: "SNF and classes agree", False: "SNF and classes DISAGREE",
                     None: "no class method (multisquares)"}[census['agree']]
        lines.append(f"n={n}: Z-structure: {snf.describe()}{torsion_note} [{agreement}]")
        if config.tsv:
            out = FilePath(config.tsv)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"relations_{n}.tsv").write_text(relation_set_general(g, n).to_tsv(), encoding="utf-8")
    _emit(config, "\n".join(lines) + "\n", CochainRun(levels=reports))
    return EXIT_CHECK_FAILED if any(r.method_agreement is False for r in reports) else EXIT_OK


def cmd_verify_paper(config: RunConfig) -> int:
    report = ReplicationSuite(corpus_size=config.corpus_size).run()
    _emit(config, render_text(report), report)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    'info': cmd_info,
    'smoves': cmd_smoves,
    'basis': cmd_basis,
    'homology': cmd_homology,
    'cochain': cmd_cochain,
    'verify-paper': cmd_verify_paper,
}


# =============================================================================
# ARGUMENTS
# =============================================================================

def _field_argument(text: str) -> str:
    try:
        FieldDescriptor.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathhom", description=settings.PROJECT_NAME)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--input", "-i", required=True, help="edge-list file or fixture:NAME")

    levels = argparse.ArgumentParser(add_help=False)
    levels.add_argument("--n", type=int, help="single level")
    levels.add_argument("--n-max", type=int, help="highest level (default: longest path + 1, capped)")

    fields = argparse.ArgumentParser(add_help=False)
    fields.add_argument("--field", action="append", type=_field_argument,
                        help="Q, F2, Fp or GF(p); repeatable")

    sub.add_parser("info", parents=[common, graph], help="vertex, arrow and pair census")
    smoves = sub.add_parser("smoves", parents=[common, graph, levels], help="short-move graphs and classes")
    smoves.add_argument("--dot", help="write Graphviz DOT to this path")
    sub.add_parser("basis", parents=[common, graph, levels, fields], help="Omega_n bases")
    homology = sub.add_parser("homology", parents=[common, graph, levels, fields],
                              help="Omega and PH dimensions, Euler characteristic")
    homology.add_argument("--entries", action="store_true", help="report boundary entries in class bases")
    homology.add_argument("--tsv", help="directory for boundary matrix dumps")
    cochain = sub.add_parser("cochain", parents=[common, graph, levels], help="integral cochain structure")
    cochain.add_argument("--tsv", help="directory for relation matrix dumps")
    verify = sub.add_parser("verify-paper", parents=[common], help="replay all reference checks")
    verify.add_argument("--corpus-size", type=int, help=f"random digraphs (default {settings.CORPUS_SIZE})")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    n = getattr(args, "n", None)
    return RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        n_min=n if n is not None else 0,
        n_max=n if n is not None else getattr(args, "n_max", None),
        fields=getattr(args, "field", None) or list(settings.DEFAULT_FIELDS),
        output="json" if args.json else "text",
        dot=getattr(args, "dot", None),
        tsv=getattr(args, "tsv", None),
        entries=getattr(args, "entries", False),
        corpus_size=getattr(args, "corpus_size", None),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    load_dotenv()
    logging.basicConfig(level=settings.LOG_LEVEL, format=settings.LOG_FORMAT, stream=sys.stderr)

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        config = config_from_args(args)
    except ValidationError as e:
        logger.error(f"Invalid arguments: {e}")
        return EXIT_USAGE

    try:
        return COMMANDS[config.command](config)
    except (DigraphParseError, UnknownFixture, OSError) as e:
        logger.error(f"Cannot load input: {e}")
        return EXIT_USAGE
    except PathHomologyError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_CHECK_FAILED
