from pathlib import Path
import argparse
from argparse import Namespace as CommandLineArgs
from defcol.config import Config
from defcol.defect import FIVE_COLORING_SOURCES
from defcol.instances.generators import FAMILIES
from io import StringIO
from typing import List, Optional
import textwrap

ORACLES = ("m", "mk", "mprime", "mdprime", "uacyclic")
TRANSVERSAL_METHODS = ("min", "u-acyclic", "constructive")


class WrapPreserveNewlinesHelpFormatter(argparse.HelpFormatter):
    def _split_lines(self, text: str, width: int):
        # Wrap each existing line separately, preserving manual newlines
        lines = []
        for line in text.splitlines() or [""]:
            if not line.strip():
                lines.append("")
            else:
                lines.extend(textwrap.wrap(line, width))
        return lines


def formatter(prog: str) -> argparse.HelpFormatter:
    return WrapPreserveNewlinesHelpFormatter(
        prog,
        max_help_position=32,
        width=100,
    )


class ValidationError(Exception):
    pass


class UsageError(Exception):
    """argparse rejected the command line; the message has already been printed."""

    def __init__(self, code: int):
        super().__init__(f"usage error (exit code {code})")
        self.code = code


def _common_options(default_cfg: Config) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    other = common.add_argument_group("Other options")
    other.add_argument(
        "--threads",
        "-t",
        type=int,
        metavar="INT",
        default=None,
        help=f"Number of worker processes for the coloring search [default: {default_cfg.search_config.threads}]",
    )
    other.add_argument(
        "--debug",
        action="store_true",
        default=False,
        help="Run in debug mode (DEBUG messages on stderr)",
    )
    return common


def _add_graph_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "graph",
        nargs="?",
        default="-",
        metavar="GRAPH_FILE",
        help="Graph file; '-' or nothing reads standard input",
    )


def _add_coloring_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--coloring",
        metavar="FILE|3col|apex:V",
        default=None,
        help=(
            "Coloring to use: a coloring file, '3col' for the 3-coloring of an Eulerian triangulation, "
            "or 'apex:V' for that 3-coloring with vertex V recolored 4 "
            "[default: the coloring block of the graph file]"
        ),
    )


def _add_subcommands(subparsers, common: argparse.ArgumentParser, default_cfg: Config) -> None:
    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, parents=[common], formatter_class=formatter,
                                     help=help_text, description=help_text)

    validate = add("validate", "Check a graph file (simple, planar rotation, triangulation)")
    _add_graph_input(validate)
    validate.add_argument("--triangulation", action="store_true", default=False,
                          help="Require a plane triangulation even if the header does not say so")

    faces = add("faces", "List the faces of the embedded graph")
    _add_graph_input(faces)

    decompose = add("decompose", "Split a triangulation along separating triangles into 4-connected pieces")
    _add_graph_input(decompose)

    color = add("color", "Search for a proper (optionally acyclic) k-coloring")
    _add_graph_input(color)
    color.add_argument("--k", type=int, required=True, metavar="INT", help="Number of colors")
    color.add_argument("--acyclic", action="store_true", default=False,
                       help="Require every two color classes to induce a forest")
    color.add_argument("--budget", type=int, metavar="INT", default=None,
                       help=f"Search node budget [default: {default_cfg.search_config.node_budget}]")

    m_value = add("m-value", "Minimum number of edges to delete so that the coloring becomes acyclic")
    _add_graph_input(m_value)
    _add_coloring_option(m_value)

    transversal = add("transversal", "Compute and verify a transversal of the 2-colored cycles")
    _add_graph_input(transversal)
    _add_coloring_option(transversal)
    transversal.add_argument("--avoid", type=Path, metavar="FILE", default=None,
                             help="File of 'u v' edges the transversal must not contain")
    transversal.add_argument("--u", dest="u_set", metavar="a,b,c", default=None,
                             help="Clique U (at most 3 vertices) that the transversal must not connect")
    transversal.add_argument("--method", choices=TRANSVERSAL_METHODS, default=None,
                             help="min: spanning-forest complement; u-acyclic: optimal U-acyclic; "
                                  "constructive: inductive construction "
                                  "[default: u-acyclic with --u, min otherwise]")
    transversal.add_argument("--exchange-limit", type=int, metavar="INT", default=None,
                             help=f"Augmentation limit of the exact solver "
                                  f"[default: {default_cfg.transversal_config.exchange_limit}]")
    transversal.add_argument("--debug-lifting", action="store_true", default=False,
                             help="Fail instead of repairing when a constructive lifting step does not verify")

    defect = add("defect", "Delete edges of a triangulation so that it becomes acyclically 4- or 3-colorable")
    _add_graph_input(defect)
    defect.add_argument("--k", type=int, choices=(3, 4), default=4, help="Target number of colors [default: 4]")
    defect.add_argument("--five-coloring-source", choices=FIVE_COLORING_SOURCES, default=None,
                        help="Where the initial acyclic 5-coloring comes from "
                             "[default: the graph file coloring if present, else search]")
    defect.add_argument("--budget", type=int, metavar="INT", default=None,
                        help=f"Search node budget [default: {default_cfg.search_config.node_budget}]")

    gen = add("gen", "Generate an instance and print it as a graph file")
    gen.add_argument("family", choices=sorted(FAMILIES), metavar="FAMILY",
                     help="One of: " + ", ".join(sorted(FAMILIES)))
    gen.add_argument("params", type=int, nargs="*", metavar="PARAM", help="Integer family parameters, in order")
    gen.add_argument("--seed", type=int, default=0, metavar="INT", help="Seed of random families [default: 0]")

    oracle = add("oracle", "Brute-force values for small graphs")
    oracle.add_argument("which", choices=ORACLES, metavar="{" + ",".join(ORACLES) + "}",
                        help="m: m(G, phi); mk: m_k; mprime: m'_k; mdprime: m''_k; "
                             "uacyclic: an optimal U-acyclic transversal")
    _add_graph_input(oracle)
    _add_coloring_option(oracle)
    oracle.add_argument("--k", type=int, metavar="INT", default=None, help="Number of colors (mk, mprime, mdprime)")
    oracle.add_argument("--u", dest="u_set", metavar="a,b,c", default=None, help="Clique U (uacyclic)")

    verify = add("verify-paper", "Run every claim check and write the report")
    verify.add_argument("--quick", action="store_true", default=False,
                        help=f"Restrict oracle checks to n <= {default_cfg.verify_config.quick_max_n}")
    verify.add_argument("--output-dir", "-o", type=Path, metavar="DIR", default=None,
                        help="Output directory "
                             f"[default: {default_cfg.output_config.latest_symlink.parent}/"
                             "{CURRENT_TIME}]")
    verify.add_argument("--claim", dest="claims", action="append", metavar="ID", default=None,
                        help="Run only this claim (repeatable)")


def build_cmdline_args_parser(default_cfg: Config) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defcol",
        formatter_class=formatter,
        description="defcol: defective acyclic colorings of plane graphs",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    _add_subcommands(subparsers, _common_options(default_cfg), default_cfg)
    return parser


def get_command_line_args(default_cfg: Config, argv: Optional[List[str]] = None) -> CommandLineArgs:
    """
    Raises:
        UsageError: If argparse rejected the command line (or printed help).
        ValidationError: If the parsed values are inconsistent; the message includes the help.
    """
    parser = build_cmdline_args_parser(default_cfg)
    try:
        parsed_args = parser.parse_args(argv)
    except SystemExit as e:
        raise UsageError(e.code if isinstance(e.code, int) else 2)
    try:
        validate_arguments(parsed_args)
    except ValidationError as e:
        help_message = StringIO()
        parser.print_usage(help_message)
        error_message = str(e) if str(e) else "Options validation failed!"
        raise ValidationError(error_message + "\n" + help_message.getvalue().rstrip())
    return parsed_args


def validate(expr, msg=""):
    if not expr:
        raise ValidationError(msg)


def parse_vertex_list(text: str) -> List[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated vertex labels, got {text!r}")


def validate_arguments(args: CommandLineArgs):
    threads = getattr(args, "threads", None)
    if threads is not None:
        validate(threads >= 1, "--threads must be a positive integer")

    k = getattr(args, "k", None)
    if k is not None:
        validate(k >= 1, "--k must be a positive integer")

    budget = getattr(args, "budget", None)
    if budget is not None:
        validate(budget >= 1, "--budget must be a positive integer")

    u_set = getattr(args, "u_set", None)
    if u_set is not None:
        vertices = parse_vertex_list(u_set)
        validate(len(vertices) <= 3, "--u takes at most 3 vertices")

    if args.command == "oracle":
        validate(args.which not in ("mk", "mprime", "mdprime") or args.k is not None,
                 f"oracle {args.which} needs --k")

    if args.command == "transversal" and args.method == "min":
        validate(args.u_set is None, "--u cannot be combined with --method min")
    if args.command == "transversal" and args.avoid is not None:
        validate(args.method in (None, "min"), "--avoid is only supported by --method min")
        validate(args.u_set is None, "--avoid cannot be combined with --u")

    if args.command == "gen":
        family = FAMILIES[args.family]
        validate(len(args.params) == len(family.parameters),
                 f"family {args.family} takes {len(family.parameters)} parameter(s) "
                 f"({', '.join(family.parameters) or 'none'}), got {len(args.params)}")
