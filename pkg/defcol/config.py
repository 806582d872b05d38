import time
from argparse import Namespace as CommandLineArgs
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Optional, Tuple

import yaml

from defcol.instances.oracles import OracleLimits


@dataclass
class OutputConfig:
    output_dir: Path
    latest_symlink: Path
    update_latest_symlink: bool

    report: Path
    tsv_report: Path


@dataclass
class SearchConfig:
    node_budget: Optional[int]
    threads: int
    parallel_depth: int


@dataclass
class OracleConfig:
    max_n: int
    max_edges: int

    @property
    def limits(self) -> OracleLimits:
        return OracleLimits(max_n=self.max_n, max_edges=self.max_edges)


@dataclass
class TransversalConfig:
    exchange_limit: int
    debug_lifting: bool


@dataclass
class VerifyConfig:
    quick_max_n: int
    sampled_colorings: int
    random_seeds: Tuple[int, ...]


@dataclass
class Config:
    output_config: OutputConfig
    search_config: SearchConfig
    oracle_config: OracleConfig
    transversal_config: TransversalConfig
    verify_config: VerifyConfig


def _unique_timestamp_dir(root: Path) -> Path:
    while True:
        out_dir = root / Path(datetime.now().strftime("%Y-%m-%d_%H-%M-%S"))
        if not out_dir.exists():
            return out_dir
        time.sleep(1)


def _output_config(cfg: dict, args: Optional[CommandLineArgs]) -> OutputConfig:
    default_output_dir_root = Path.cwd() / Path(cfg["default_output_dir_root"])
    latest_output_dir_symlink = default_output_dir_root / Path(cfg["symlink_to_latest"])

    if args is not None and getattr(args, "output_dir", None) is not None:
        output_dir = Path(args.output_dir).expanduser().resolve()
        update_latest = False
    else:
        # resolved lazily: only verify-paper writes files
        output_dir = default_output_dir_root / "pending"
        update_latest = True

    return OutputConfig(
        output_dir=output_dir,
        latest_symlink=latest_output_dir_symlink,
        update_latest_symlink=update_latest,
        report=output_dir / Path(cfg["report_txt"]),
        tsv_report=output_dir / Path(cfg["report_tsv"]),
    )


def with_timestamped_output(conf: Config) -> Config:
    """Point the output paths at a fresh timestamped directory under the default root."""
    if not conf.output_config.update_latest_symlink:
        return conf
    output_dir = _unique_timestamp_dir(conf.output_config.latest_symlink.parent)
    conf.output_config.output_dir = output_dir
    conf.output_config.report = output_dir / conf.output_config.report.name
    conf.output_config.tsv_report = output_dir / conf.output_config.tsv_report.name
    return conf


def load_config(args: Optional[CommandLineArgs] = None) -> Config:
    configs_dir = Path(__file__).resolve().parent / "configs"
    cfg = yaml.safe_load((configs_dir / "config.yaml").open("r"))

    limits = OracleLimits.from_environment(cfg["oracle"]["max_n"], cfg["oracle"]["max_edges"])
    conf = Config(
        output_config=_output_config(cfg, args),
        search_config=SearchConfig(
            node_budget=cfg["search"]["node_budget"],
            threads=cfg["search"]["threads"],
            parallel_depth=cfg["search"]["parallel_depth"],
        ),
        oracle_config=OracleConfig(
            max_n=limits.max_n,
            max_edges=limits.max_edges,
        ),
        transversal_config=TransversalConfig(
            exchange_limit=cfg["transversal"]["exchange_limit"],
            debug_lifting=cfg["transversal"]["debug_lifting"],
        ),
        verify_config=VerifyConfig(
            quick_max_n=cfg["verify"]["quick_max_n"],
            sampled_colorings=cfg["verify"]["sampled_colorings"],
            random_seeds=tuple(cfg["verify"]["random_seeds"]),
        ),
    )

    # CLI override
    if args is not None and getattr(args, "budget", None) is not None:
        conf.search_config.node_budget = args.budget

    if args is not None and getattr(args, "threads", None) is not None:
        conf.search_config.threads = args.threads

    if args is not None and getattr(args, "exchange_limit", None) is not None:
        conf.transversal_config.exchange_limit = args.exchange_limit

    if args is not None and getattr(args, "debug_lifting", False):
        conf.transversal_config.debug_lifting = True

    return conf
