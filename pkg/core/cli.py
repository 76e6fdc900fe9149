"""
Command-line front end: parses a graph, runs one stage (or the whole degree
list-coloring pipeline) and reports a CommandResult as text or JSON.
"""

import argparse
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from config import BOLD, CYAN, GREEN, PALETTE_SLACK, RED, RESET, YELLOW
from core.at_engine import (
    EXHAUSTIVE, FRONTIER, build_brooks_orientation, eulerian_census, polynomial_coefficient,
)
from core.coloring import (
    DEGREE_RULE, DELTA_RULE, constant_sizes, degree_sizes, delta_sizes,
    find_bad_assignment, find_list_coloring, parse_lists, random_degree_list_trial,
)
from core.console import log
from core.errors import (
    BrooksError, CapacityError, DomainError, GallaiTreeError, GraphFormatWarning,
    InvariantViolation, PreconditionError,
)
from core.generators import named_graph
from core.graph import DIMACS, EDGE_LIST, Graph, Orientation, load_graph as read_graph_file, parse_arc_list
from core.paint_game import PaintSolver, initial_state
from core.settings_store import settings
from core.structure import (
    block_decomposition, classify_block, find_witness_cycle, gallai_report, spanning_ordering,
)

OK = "ok"
PROPERTY_FAILED = "property_failed"
INPUT_ERROR = "input_error"
CAPACITY_ERROR = "capacity_error"

EXIT_CODES = {OK: 0, PROPERTY_FAILED: 1, INPUT_ERROR: 2, CAPACITY_ERROR: 2}

COMMANDS = ("classify", "blocks", "witness", "order", "orient", "census", "coeff",
            "color", "choosable", "paint", "pipeline", "trials")


class UsageError(PreconditionError):
    """Unknown subcommand, unknown flag or bad flag value."""


@dataclass
class CommandResult:
    command: str
    status: str
    payload: Dict[str, Any] = field(default_factory=dict)
    message: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "status": self.status,
            "exit_code": self.exit_code,
            "message": self.message,
            "payload": self.payload,
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _sizes_arg(text: str) -> str:
    if text in (DEGREE_RULE, DELTA_RULE) or (text.isascii() and text.isdigit() and int(text) > 0):
        return text
    raise argparse.ArgumentTypeError(f"expected degree, delta or a positive integer, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--input", "-i", metavar="FILE", help="graph file")
    source.add_argument("--graph", metavar="NAME", help="named graph: C5, K4, K4-e, P4, S3, W5, K3,3, petersen")
    common.add_argument("--format", default=EDGE_LIST, choices=[EDGE_LIST, DIMACS])
    common.add_argument("--json", action="store_true", help="emit the full result as JSON")
    common.add_argument("--seed", type=int, help="seed for random trials (required with --json)")
    common.add_argument("--settings", metavar="FILE", help="JSON settings override file")
    common.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")

    parser = _Parser(prog="brooks-at", description="Constructive checks of Brooks' theorem "
                                                   "via orientations and list colorings.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("classify", parents=[common], help="Gallai-tree recognition")
    sub.add_parser("blocks", parents=[common], help="block decomposition")
    sub.add_parser("witness", parents=[common], help="even cycle with at most one chord")

    p = sub.add_parser("order", parents=[common], help="spanning-tree predecessor ordering")
    p.add_argument("--root", default=None, metavar="V")

    sub.add_parser("orient", parents=[common], help="build the degree orientation")

    for name in ("census", "coeff"):
        p = sub.add_parser(name, parents=[common],
                           help="Eulerian subgraph census" if name == "census" else "graph polynomial coefficient")
        p.add_argument("--directed", action="store_true", help="read the input as arcs 'tail head'")
        if name == "census":
            p.add_argument("--method", default=EXHAUSTIVE, choices=[EXHAUSTIVE, FRONTIER])

    p = sub.add_parser("color", parents=[common], help="color from given lists")
    p.add_argument("--lists", required=True, metavar="FILE")

    p = sub.add_parser("choosable", parents=[common], help="exhaustive f-choosability")
    p.add_argument("--sizes", type=_sizes_arg, default=DEGREE_RULE)
    p.add_argument("--audit", action="store_true", help="enumerate every assignment literally")

    p = sub.add_parser("paint", parents=[common], help="solve the paint game")
    p.add_argument("--sizes", type=_sizes_arg, default=DEGREE_RULE)
    p.add_argument("--k", type=int, default=None, help="paintability number (k - 1 erasers)")
    p.add_argument("--audit", action="store_true", help="unrestricted Correct moves")

    for name in ("pipeline", "trials"):
        p = sub.add_parser(name, parents=[common],
                           help="full degree-coloring check" if name == "pipeline" else "random list trials")
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--palette", type=int, default=None)
        if name == "trials":
            p.add_argument("--rule", default=DEGREE_RULE, choices=[DEGREE_RULE, DELTA_RULE])
    return parser


class CommandRunner:
    """Dispatches one parsed command; failures become statuses, never exceptions."""

    def __init__(self, args: argparse.Namespace):
        self.args = args

    # === Inputs ===

    def _input_path(self) -> Path:
        if not self.args.input:
            raise UsageError("an input graph is required (--input FILE or --graph NAME)")
        return Path(self.args.input)

    def load_graph(self) -> Graph:
        if self.args.graph:
            return named_graph(self.args.graph)
        return read_graph_file(self._input_path(), self.args.format)

    def load_orientation(self) -> Orientation:
        if self.args.graph:
            raise UsageError("--directed needs an arc file (--input)")
        if self.args.format != EDGE_LIST:
            raise UsageError("--directed reads the edge-list format only")
        return parse_arc_list(self._input_path().read_text(encoding="utf-8"))

    def seed(self) -> int:
        if self.args.seed is not None:
            if self.args.seed < 0:
                raise UsageError("--seed must be nonnegative")
            return self.args.seed
        if self.args.json:
            raise UsageError("--seed is required with --json so reports are reproducible")
        return int(settings.get("trials.seed", 0))

    # === Dispatch ===

    def execute(self) -> CommandResult:
        command = self.args.command
        handler = getattr(self, f"_{command}")
        log("CLI", f"Running {command}")
        try:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always", GraphFormatWarning)
                result = handler()
        except CapacityError as e:
            return CommandResult(command, CAPACITY_ERROR, {"limit": e.limit, "actual": e.actual}, str(e))
        except InvariantViolation as e:
            return CommandResult(command, PROPERTY_FAILED, {}, f"internal check failed: {e}")
        except (BrooksError, OSError, UnicodeDecodeError) as e:
            return CommandResult(command, INPUT_ERROR, {}, str(e))

        notes = [str(w.message) for w in caught if issubclass(w.category, GraphFormatWarning)]
        if notes:
            result.payload["warnings"] = notes
        return result

    # === Structure ===

    def _classify(self) -> CommandResult:
        graph = self.load_graph()
        report = gallai_report(graph)
        payload = {"graph": graph.describe(), **report.to_dict()}
        verdict = "yes" if report.is_gallai_tree else "no"
        return CommandResult("classify", OK, payload, f"Gallai tree: {verdict} ({report.reason})")

    def _blocks(self) -> CommandResult:
        graph = self.load_graph()
        decomposition = block_decomposition(graph)
        blocks = [{"vertices": list(b), "kind": classify_block(graph, b)} for b in decomposition.blocks]
        payload = {"graph": graph.describe(), "blocks": blocks,
                   "cut_vertices": list(decomposition.cut_vertices)}
        return CommandResult("blocks", OK, payload,
                             f"{len(blocks)} blocks, {len(decomposition.cut_vertices)} cut vertices")

    def _witness(self) -> CommandResult:
        graph = self.load_graph()
        witness = find_witness_cycle(graph)
        chord = f" with chord {list(witness.chord)}" if witness.chord else " without chord"
        return CommandResult("witness", OK, {"graph": graph.describe(), "witness": witness.to_dict()},
                             f"witness cycle {list(witness.cycle)}{chord}")

    def _order(self) -> CommandResult:
        graph = self.load_graph()
        if graph.vertex_count == 0:
            raise PreconditionError("the empty graph has no ordering")
        root = graph.vertex_id(self.args.root) if self.args.root is not None else 0
        ordering = spanning_ordering(graph, root)
        holds = ordering.satisfies_predecessor_property(graph)
        payload = {"graph": graph.describe(), "ordering": ordering.to_dict(),
                   "parents": list(ordering.parents), "predecessor_property": holds}
        return CommandResult("order", OK if holds else PROPERTY_FAILED, payload,
                             f"ordering from {root}: {list(ordering.order)}")

    # === Orientation and census ===

    def _orient(self) -> CommandResult:
        graph = self.load_graph()
        report = build_brooks_orientation(graph)
        passed = report.min_out_degree >= 1 and report.census.difference != 0 \
            and report.census_matches_expected
        payload = {"graph": graph.describe(), **report.to_dict()}
        census = report.census
        return CommandResult("orient", OK if passed else PROPERTY_FAILED, payload,
                             f"min out-degree {report.min_out_degree}, "
                             f"EE={census.even_count} OE={census.odd_count}")

    def _orientation_for(self) -> Tuple[Orientation, Dict[str, Any]]:
        if self.args.directed:
            orientation = self.load_orientation()
            return orientation, {"source": "arcs"}
        report = build_brooks_orientation(self.load_graph())
        return report.orientation, {"source": "constructed", "witness": report.witness.to_dict()}

    def _census(self) -> CommandResult:
        orientation, payload = self._orientation_for()
        census = eulerian_census(orientation, self.args.method)
        payload.update({
            "graph": orientation.base.describe(),
            "arcs": [list(arc) for arc in orientation.arcs],
            "method": self.args.method,
            "census": census.to_dict(),
        })
        status = OK if census.difference != 0 else PROPERTY_FAILED
        return CommandResult("census", status, payload,
                             f"EE={census.even_count} OE={census.odd_count} difference={census.difference}")

    def _coeff(self) -> CommandResult:
        orientation, payload = self._orientation_for()
        coefficient = polynomial_coefficient(orientation)
        census = eulerian_census(orientation)
        agrees = abs(coefficient) == abs(census.difference)
        payload.update({
            "graph": orientation.base.describe(),
            "arcs": [list(arc) for arc in orientation.arcs],
            "monomial_exponents": list(orientation.in_degrees),
            "coefficient": coefficient,
            "census_difference": census.difference,
            "agrees_with_census": agrees,
        })
        status = OK if agrees and coefficient != 0 else PROPERTY_FAILED
        return CommandResult("coeff", status, payload,
                             f"coefficient {coefficient}, census difference {census.difference}")

    # === Coloring ===

    def _color(self) -> CommandResult:
        graph = self.load_graph()
        lists = parse_lists(Path(self.args.lists).read_text(encoding="utf-8"), graph)
        coloring = find_list_coloring(graph, lists)
        payload = {"graph": graph.describe(), "lists": lists.to_dict(),
                   "coloring": coloring.to_dict() if coloring else None}
        if coloring is None:
            return CommandResult("color", PROPERTY_FAILED, payload, "no proper coloring from these lists")
        return CommandResult("color", OK, payload, "proper list coloring found")

    def _sizes(self, graph: Graph, what: str) -> Tuple[int, ...]:
        rule = self.args.sizes
        if rule == DEGREE_RULE:
            isolated = [v for v in graph.vertices if graph.degree(v) == 0]
            if isolated or graph.vertex_count == 0:
                raise DomainError(f"degree {what} need minimum degree >= 1; isolated vertices {isolated}")
            return degree_sizes(graph)
        if rule == DELTA_RULE:
            if graph.max_degree < 1:
                raise DomainError(f"Δ {what} need at least one edge")
            return delta_sizes(graph)
        return constant_sizes(graph, int(rule))

    def _choosable(self) -> CommandResult:
        graph = self.load_graph()
        sizes = self._sizes(graph, "lists")
        bad = find_bad_assignment(graph, sizes, symmetry_pruning=not self.args.audit)
        payload = {"graph": graph.describe(), "sizes": list(sizes), "audit": self.args.audit,
                   "choosable": bad is None, "bad_assignment": bad.to_dict() if bad else None}
        if bad is not None:
            return CommandResult("choosable", PROPERTY_FAILED, payload,
                                 f"not {self.args.sizes}-choosable: some lists admit no coloring")
        return CommandResult("choosable", OK, payload, f"{self.args.sizes}-choosable")

    # === Paint game ===

    def _paint(self) -> CommandResult:
        graph = self.load_graph()
        if self.args.k is not None:
            if self.args.k <= 0:
                raise UsageError(f"--k must be positive, got {self.args.k}")
            label = f"{self.args.k}-paintable"
            erasers = [self.args.k - 1] * graph.vertex_count
        else:
            label = f"{self.args.sizes}-paintable"
            erasers = [f - 1 for f in self._sizes(graph, "erasers")]

        state = initial_state(graph, erasers)
        solver = PaintSolver(graph, audit=self.args.audit)
        wins = solver.correct_wins(state)
        payload = {"graph": graph.describe(), "erasers": list(state.erasers), "audit": self.args.audit,
                   "correct_wins": wins, "states_evaluated": solver.states_evaluated}
        if not wins:
            move = solver.winning_paint_move(state)
            payload["paint_first_move"] = [v for v in graph.vertices if move.marked >> v & 1] if move else None
            return CommandResult("paint", PROPERTY_FAILED, payload, f"not {label}: Mr. Paint wins")
        return CommandResult("paint", OK, payload, f"{label}: Mrs. Correct wins")

    # === Random trials and pipeline ===

    def _trial_settings(self, graph: Graph) -> Tuple[int, int]:
        trials = self.args.trials if self.args.trials is not None else int(settings.get("trials.count", 1000))
        largest = graph.max_degree if graph.vertex_count else 0
        palette = self.args.palette if self.args.palette is not None else largest + PALETTE_SLACK
        if trials < 0:
            raise UsageError("--trials must be nonnegative")
        return trials, palette

    def _trials(self) -> CommandResult:
        graph = self.load_graph()
        seed = self.seed()
        trials, palette = self._trial_settings(graph)
        report = random_degree_list_trial(graph, palette, trials, seed, self.args.rule)
        payload = {"graph": graph.describe(), "trials": report.to_dict()}
        status = PROPERTY_FAILED if report.fatal else OK
        return CommandResult("trials", status, payload,
                             f"{report.failure_count} of {trials} random {self.args.rule} lists failed")

    def _pipeline(self) -> CommandResult:
        graph = self.load_graph()
        seed = self.seed()
        classification = gallai_report(graph)
        if classification.is_gallai_tree:
            raise GallaiTreeError(
                f"Gallai tree ({classification.reason}): the degree-choosability construction does not apply")

        report = build_brooks_orientation(graph)
        trials, palette = self._trial_settings(graph)
        trial_report = random_degree_list_trial(graph, palette, trials, seed, DEGREE_RULE)

        paint: Dict[str, Any]
        paint_limit = int(settings.get("capacity.pipeline_paint_vertices", 7))
        if graph.vertex_count <= paint_limit:
            solver = PaintSolver(graph)
            wins = solver.correct_wins(initial_state(graph, [d - 1 for d in graph.degrees]))
            paint = {"status": "checked", "degree_paintable": wins, "states_evaluated": solver.states_evaluated}
        else:
            wins = None
            paint = {"status": "skipped", "degree_paintable": None,
                     "reason": f"{graph.vertex_count} vertices exceeds the pipeline paint bound {paint_limit}"}

        assertions = {
            "not_gallai_tree": True,
            "min_out_degree_positive": report.min_out_degree >= 1,
            "census_nonzero": report.census.difference != 0,
            "census_matches_witness": report.census_matches_expected,
            "random_degree_lists_colored": trial_report.failure_count == 0,
            "degree_paintable": wins,
        }
        passed = all(value for value in assertions.values() if value is not None)
        payload = {
            "graph": graph.describe(),
            "classify": classification.to_dict(),
            "witness": report.witness.to_dict(),
            "ordering": report.ordering.to_dict(),
            "orientation": {
                "arcs": [list(arc) for arc in report.orientation.arcs],
                "in_degrees": list(report.in_degree_per_vertex),
                "min_out_degree": report.min_out_degree,
            },
            "census": report.census.to_dict(),
            "expected_census": list(report.expected_census),
            "trials": trial_report.to_dict(),
            "paint": paint,
            "assertions": assertions,
        }
        failed = [name for name, value in assertions.items() if value is False]
        message = "all checks passed" if passed else f"failed: {', '.join(failed)}"
        return CommandResult("pipeline", OK if passed else PROPERTY_FAILED, payload, message)


# === Output ===

def _flatten(payload: Dict[str, Any], prefix: str = "") -> List[Tuple[str, str]]:
    rows = []
    for key in sorted(payload):
        value = payload[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict) and value and len(value) <= 12:
            rows.extend(_flatten(value, name + "."))
        else:
            rows.append((name, json.dumps(value, sort_keys=True) if not isinstance(value, str) else value))
    return rows


def render_text(result: CommandResult, color: bool = False) -> str:
    """Message line, then one aligned "key: value" row per payload field."""
    tint = {OK: GREEN, PROPERTY_FAILED: YELLOW}.get(result.status, RED) if color else ""
    reset = RESET if color else ""
    lines = [f"{tint}{BOLD if color else ''}[{result.command}] {result.status}{reset}: {result.message}"]
    rows = _flatten(result.payload)
    width = max((len(name) for name, _ in rows), default=0)
    for name, value in rows:
        key = f"{CYAN}{name.ljust(width)}{RESET}" if color else name.ljust(width)
        lines.append(f"  {key} : {value}")
    return "\n".join(lines)


def render_json(result: CommandResult) -> str:
    return json.dumps(result.to_dict(), sort_keys=True, indent=2)


def run(argv: Optional[Sequence[str]] = None) -> Tuple[CommandResult, Optional[argparse.Namespace]]:
    """Parse and execute; returns the result and the parsed arguments (None on usage errors)."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return CommandResult("usage", INPUT_ERROR, {}, str(e)), None

    # Flags apply to this run only
    snapshot = settings.get_all()
    try:
        if args.verbose:
            settings.set("console.verbose", True)
        if args.settings:
            try:
                settings.load_file(args.settings)
            except (OSError, ValueError) as e:
                return CommandResult(args.command, INPUT_ERROR, {}, f"cannot load settings: {e}"), args
        return CommandRunner(args).execute(), args
    finally:
        settings.restore(snapshot)


def main(argv: Optional[Sequence[str]] = None) -> int:
    result, args = run(argv)
    as_json = args is not None and args.json
    print(render_json(result) if as_json else render_text(result))
    return result.exit_code
