import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, TextIO

from defcol.coloring import Coloring, ColoringError, apex_recoloring, eulerian_three_coloring
from defcol.coloring_search import SearchStatus, search_coloring
from defcol.config import load_config, with_timestamped_output
from defcol.decomposition import decompose
from defcol.defect import defect_bounds, verify_defect_report
from defcol.graph_file_parser import GraphFile, read_coloring_file, read_edge_list, read_graph_file
from defcol.instances.generators import FAMILIES, generate
from defcol.instances.oracles import (
    brute_m,
    brute_m_dprime,
    brute_m_k,
    brute_m_prime,
    brute_optimal_u_acyclic,
)
from defcol.logger import Logger
from defcol.option_parser import ValidationError, get_command_line_args, parse_vertex_list
from defcol.output.graph_file_writer import format_coloring, format_edges, format_graph
from defcol.plane_graph import ensure_rotation, faces, validate
from defcol.reporting.claims import CLAIMS
from defcol.reporting.report_builder import ReportBuilder
from defcol.reporting.report_config import ReportConfigManager
from defcol.reporting.report_formatter import ReportFormatter
from defcol.reporting.report_writer import write_report
from defcol.transversal import bound_for, m_value, min_transversal, verify_certificate
from defcol.u_acyclic import constructive_u_acyclic_transversal, u_acyclic_transversal
from defcol.version import get_version

EXIT_OK = 0
EXIT_CHECK_FAILED = 1


def _show(value) -> str:
    return "inf" if value == float("inf") else str(value)


class PipelineHelper:
    """
    Runs one defcol subcommand.

    Attributes:
        config: Configuration (YAML defaults with command-line overrides).
        args: Command-line arguments parsed into an object.
        log: Logger instance; diagnostics go to stderr.
        stdin: Stream read when the graph file is '-'.
        stdout: Stream receiving the machine-readable output.
    """

    def __init__(self, log: Logger, argv: Optional[List[str]] = None,
                 stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None):
        self.log = log
        self.stdin = stdin
        self.stdout = stdout if stdout is not None else sys.stdout

        default_cfg = load_config()
        self.args = get_command_line_args(default_cfg, argv)
        self.config = load_config(self.args)

        if self.args.debug:
            self.log.enable_debug_mode()
        self.log.debug(f"defcol version: {get_version()}")

        self._commands: Dict[str, Callable[[], int]] = {
            "validate": self.validate,
            "faces": self.faces,
            "decompose": self.decompose,
            "color": self.color,
            "m-value": self.m_value,
            "transversal": self.transversal,
            "defect": self.defect,
            "gen": self.gen,
            "oracle": self.oracle,
            "verify-paper": self.verify_paper,
        }

    def run_command(self) -> int:
        self.log.start()
        return self._commands[self.args.command]()

    def _emit(self, lines: List[str]) -> None:
        for line in lines:
            self.stdout.write(line + "\n")
        self.stdout.flush()

    def _read_graph(self) -> GraphFile:
        graph_file = read_graph_file(self.args.graph, stdin=self.stdin)
        G = graph_file.graph
        self.log.debug(f"read {G.name or 'graph'}: n={G.n}, m={G.m}, rotation={G.has_rotation}")
        return graph_file

    def _coloring(self, graph_file: GraphFile) -> Coloring:
        """
        Raises:
            ValidationError: If no coloring is available or 'apex:V' is malformed.
            ColoringError: If '3col' is requested for a graph with an odd-degree vertex.
        """
        choice = self.args.coloring
        G = graph_file.graph
        if choice is None:
            if graph_file.coloring is None:
                raise ValidationError("no coloring given: use --coloring or a coloring block in the graph file")
            return graph_file.coloring
        if choice == "3col" or choice.startswith("apex:"):
            phi3 = eulerian_three_coloring(ensure_rotation(G))
            if phi3 is None:
                raise ColoringError(f"{G.name or 'graph'} has a vertex of odd degree, no Eulerian 3-coloring")
            if choice == "3col":
                return phi3
            try:
                apex = int(choice[len("apex:"):])
            except ValueError:
                raise ValidationError(f"--coloring apex:V needs an integer vertex, got {choice!r}")
            return apex_recoloring(G, phi3, apex)
        return read_coloring_file(choice, G)

    def _u_set(self) -> List[int]:
        return parse_vertex_list(self.args.u_set) if self.args.u_set is not None else []

    def validate(self) -> int:
        G = self._read_graph().graph
        report = validate(G, expect_triangulation=self.args.triangulation or G.triangulation)
        self._emit([check.to_line() for check in report.checks] + [f"# {report.summary()}"])
        return EXIT_OK if report.ok else EXIT_CHECK_FAILED

    def faces(self) -> int:
        G = ensure_rotation(self._read_graph().graph)
        face_list = faces(G)
        self._emit([" ".join(map(str, face)) for face in face_list] + [f"# {len(face_list)} faces"])
        return EXIT_OK

    def decompose(self) -> int:
        G = self._read_graph().graph
        tree = decompose(G)
        lines = [f"piece {i}: {' '.join(map(str, piece.vertices))}" for i, piece in enumerate(tree.pieces)]
        lines += [f"tree {edge.first} {edge.second}: {' '.join(map(str, edge.triangle))}" for edge in tree.tree_edges]
        report = tree.check(G)
        lines += [f"# {check.to_line()}" for check in report.checks]
        lines.append(f"# {tree.size} piece(s), {len(tree.triangles)} separating triangle(s), {report.summary()}")
        self._emit(lines)
        return EXIT_OK if report.ok else EXIT_CHECK_FAILED

    def color(self) -> int:
        G = self._read_graph().graph
        search = self.config.search_config
        result = search_coloring(G, self.args.k, require_acyclic=self.args.acyclic, node_budget=search.node_budget,
                                 threads=search.threads, parallel_depth=search.parallel_depth, log=self.log)
        if result.status != SearchStatus.FOUND:
            self._emit([f"# {result.status.value} after {result.nodes} nodes"])
            return EXIT_CHECK_FAILED
        self._emit(format_coloring(result.coloring, G.vertices) + [f"# found after {result.nodes} nodes"])
        return EXIT_OK

    def m_value(self) -> int:
        graph_file = self._read_graph()
        G = graph_file.graph
        phi = self._coloring(graph_file)
        bound = bound_for(G, phi)
        self._emit([str(m_value(G, phi)), f"# n={G.n}, colors used={len(phi.used)}, bound {bound.label} = {bound.value}"])
        return EXIT_OK

    def transversal(self) -> int:
        graph_file = self._read_graph()
        G = graph_file.graph
        phi = self._coloring(graph_file)
        u_set = self._u_set()
        method = self.args.method or ("u-acyclic" if u_set else "min")
        settings = self.config.transversal_config
        if method == "min":
            avoid = read_edge_list(self.args.avoid, G) if self.args.avoid is not None else []
            cert = min_transversal(G, phi, avoid)
        elif method == "u-acyclic":
            cert = u_acyclic_transversal(G, phi, u_set, settings.exchange_limit, settings.debug_lifting, self.log)
        else:
            cert = constructive_u_acyclic_transversal(G, phi, u_set, settings.exchange_limit,
                                                      settings.debug_lifting, self.log)
        report = verify_certificate(G, phi, cert)
        lines = format_edges(cert.edges)
        lines += [f"# {check.to_line()}" for check in report.checks]
        lines.append(f"# size {cert.size}, m(G, phi) = {m_value(G, phi)}, bound {cert.bound.label} = "
                     f"{cert.bound.value}, method {cert.method}")
        self._emit(lines)
        return EXIT_OK if report.ok else EXIT_CHECK_FAILED

    def defect(self) -> int:
        graph_file = self._read_graph()
        G = graph_file.graph
        search = self.config.search_config
        source = self.args.five_coloring_source
        supplied = graph_file.coloring if source in (None, "supplied") else None
        four, three = defect_bounds(G, five_coloring=supplied, source=source,
                                    node_budget=search.node_budget, threads=search.threads,
                                    parallel_depth=search.parallel_depth, log=self.log)
        report = four if self.args.k == 4 else three
        checks = verify_defect_report(G, report)
        lines = format_edges(report.deleted) + format_coloring(report.coloring, G.vertices)
        lines += [f"# {check.to_line()}" for check in checks.checks]
        lines.append(f"# deleted {report.size} edge(s), bound {report.bound} (floor {report.integer_bound}), "
                     f"5-coloring source {report.source}, recolored class {report.recolored_class}")
        self._emit(lines)
        return EXIT_OK if checks.ok else EXIT_CHECK_FAILED

    def gen(self) -> int:
        family = FAMILIES[self.args.family]
        params = dict(zip(family.parameters, self.args.params))
        descriptor = generate(self.args.family, params, seed=self.args.seed)
        shown = " ".join(f"{k}={v}" for k, v in descriptor.parameters.items())
        self._emit([f"# family: {descriptor.family} {shown}".rstrip(), f"# provenance: {descriptor.provenance}"])
        self.stdout.write(format_graph(descriptor.graph))
        self.stdout.flush()
        return EXIT_OK

    def oracle(self) -> int:
        graph_file = self._read_graph()
        G = graph_file.graph
        limits = self.config.oracle_config.limits
        which = self.args.which
        if which == "uacyclic":
            phi = self._coloring(graph_file)
            cert = brute_optimal_u_acyclic(G, phi, self._u_set(), limits)
            if cert is None:
                self._emit([f"# no U-acyclic transversal of size {m_value(G, phi)}"])
                return EXIT_CHECK_FAILED
            self._emit(format_edges(cert.edges) + [f"# size {cert.size}"])
            return EXIT_OK
        if which == "m":
            value = brute_m(G, self._coloring(graph_file), limits)
        elif which == "mk":
            value = brute_m_k(G, self.args.k, limits, log=self.log)
        elif which == "mprime":
            value = brute_m_prime(G, self.args.k, limits)
        else:
            value = brute_m_dprime(G, self.args.k, limits)
        self._emit([_show(value)])
        return EXIT_OK

    def set_up_output_dir(self, output_dir: Path) -> None:
        if output_dir.exists():
            self.log.warning(
                f"The output directory ({output_dir}) already exists! "
                f"Existing files may be overwritten."
            )
        else:
            output_dir.mkdir(parents=True)

        # Only for the *default timestamped* output dir:
        if self.config.output_config.update_latest_symlink:
            self._update_latest_symlink(self.config.output_config.latest_symlink, output_dir)

    def _update_latest_symlink(self, symlink_path: Path, target_dir: Path) -> None:
        try:
            if symlink_path.exists() or symlink_path.is_symlink():
                if symlink_path.is_dir() and not symlink_path.is_symlink():
                    raise RuntimeError(
                        f"Cannot overwrite '{symlink_path}': it exists and is a directory (not a symlink)."
                    )
                symlink_path.unlink()
            symlink_path.symlink_to(target_dir.relative_to(symlink_path.parent), target_is_directory=True)
        except OSError as e:
            self.log.warning(f"Failed to update the latest symlink '{symlink_path}' -> '{target_dir}': {e}")

    def verify_paper(self) -> int:
        claims = self.args.claims
        unknown = [name for name in (claims or []) if name not in CLAIMS]
        if unknown:
            raise ValidationError(f"unknown claim(s) {unknown}, expected some of {sorted(CLAIMS)}")

        self.config = with_timestamped_output(self.config)
        output_cfg = self.config.output_config
        self.set_up_output_dir(output_cfg.output_dir)
        self.log.set_up_file_handler(output_cfg.output_dir)

        config_manager = ReportConfigManager()
        report_data = ReportBuilder(config_manager).build_report(self.config, quick=self.args.quick,
                                                                 claims=claims, log=self.log)
        formatter = ReportFormatter(config_manager.get_config())
        self._emit(formatter.format_lines(report_data))
        written = write_report(report_data, formatter, txt_destination=output_cfg.report,
                               tsv_destination=output_cfg.tsv_report)
        self.log.info("Report saved to " + " and ".join(map(str, written)))
        return EXIT_OK if report_data.all_passed else EXIT_CHECK_FAILED
