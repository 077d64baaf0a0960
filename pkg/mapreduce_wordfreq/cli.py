import argparse
import logging
import sys
from pathlib import Path
from typing import List, Literal, Optional, Set, TextIO, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .analysis import compare_corpora, drop_stopwords, top_k
from .bench import run_bench
from .config import (
    DEFAULT_BENCH_SIZE,
    DEFAULT_BLOCK_SIZE,
    DEFAULT_DISTINCT,
    DEFAULT_EXCHANGE_TIMEOUT,
    DEFAULT_REPEAT,
    DEFAULT_TOP,
    Settings,
)
from .ingestion import ingest_directory, load_stopwords
from .models import MapKind
from .pipeline import run_wordcount
from .report import render_bench, render_comparison, render_table, render_timings

logger = logging.getLogger(__name__)


class CliConfig(BaseModel):
    subcommand: Literal["wordcount", "bench", "compare"]
    input: Optional[Path] = None
    workers: List[int] = Field(default_factory=lambda: [1])
    format: Literal["tsv", "json"] = "tsv"
    timings: bool = False
    timings_out: Optional[Path] = None
    top: int = Field(DEFAULT_TOP, ge=0)
    distinct: int = Field(DEFAULT_DISTINCT, ge=0)
    corpus: List[Tuple[str, Path]] = []
    map: Optional[MapKind] = None
    n: int = Field(DEFAULT_BENCH_SIZE, ge=0)
    block: int = Field(DEFAULT_BLOCK_SIZE, ge=1)
    repeat: int = Field(DEFAULT_REPEAT, ge=1)
    stopwords: Optional[Path] = None
    seed: int = 0
    partition: Literal["global", "local"] = "global"
    exchange_timeout: float = Field(DEFAULT_EXCHANGE_TIMEOUT, gt=0)

    model_config = ConfigDict(extra="forbid")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # one line on stderr, exit status 2
        self.exit(2, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def _corpus_spec(text: str) -> Tuple[str, Path]:
    label, sep, directory = text.partition("=")
    if not sep or not label or not directory:
        raise argparse.ArgumentTypeError(f"expected LABEL=DIR, got {text!r}")
    return label, Path(directory)


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = _Parser(prog="wordfreq", description="MapReduce word frequencies, reduction benchmarks and corpus comparison",
                     allow_abbrev=False)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["tsv", "json"], default="tsv", help="Output format")

    def add_pipeline(p: argparse.ArgumentParser) -> None:
        p.add_argument("--workers", type=_positive_int, default=settings.workers, help="Worker count")
        p.add_argument("--stopwords", type=Path, help="File of words to drop from the tables")
        p.add_argument("--partition", choices=["global", "local"], default=settings.partition,
                       help="Shuffle planner: shared splitters or per-worker cuts")
        p.set_defaults(exchange_timeout=settings.exchange_timeout)

    wordcount = sub.add_parser("wordcount", help="Count word frequencies in a directory", allow_abbrev=False)
    wordcount.add_argument("--input", type=Path, required=True, help="Directory of .txt files")
    add_pipeline(wordcount)
    add_common(wordcount)
    wordcount.add_argument("--top", type=_non_negative_int, default=DEFAULT_TOP, help="Rows in the frequency table")
    wordcount.add_argument("--timings", action="store_true", help="Write per-stage timings to stderr")
    wordcount.add_argument("--timings-out", type=Path, help="Write per-stage timings to this file")

    bench = sub.add_parser("bench", help="Benchmark serial vs. blocked map-reduce", allow_abbrev=False)
    bench.add_argument("--map", type=MapKind, choices=list(MapKind), required=True, metavar="{identity,sqrt,altharm}",
                       help="Map applied before the sum")
    bench.add_argument("--n", type=_non_negative_int, default=DEFAULT_BENCH_SIZE, help="Number of elements")
    bench.add_argument("--block", type=_positive_int, default=settings.block_size, help="Elements per block")
    bench.add_argument("--workers", type=_positive_int, nargs="+", default=[settings.workers],
                       help="One or more worker counts for the blocked engine")
    bench.add_argument("--repeat", type=_positive_int, default=DEFAULT_REPEAT, help="Repetitions")
    bench.add_argument("--seed", type=int, default=0, help="Seed for synthetic inputs")
    add_common(bench)

    compare = sub.add_parser("compare", help="Compare labeled corpora", allow_abbrev=False)
    compare.add_argument("--corpus", type=_corpus_spec, action="append", required=True, metavar="LABEL=DIR",
                         help="Labeled corpus directory (repeatable)")
    compare.add_argument("--top", type=_non_negative_int, default=DEFAULT_TOP, help="Rows per frequency table")
    compare.add_argument("--distinct", type=_non_negative_int, default=DEFAULT_DISTINCT,
                         help="Rows per distinctiveness report")
    add_pipeline(compare)
    add_common(compare)
    return parser


def parse_config(parser: argparse.ArgumentParser, argv: Optional[List[str]]) -> CliConfig:
    args = vars(parser.parse_args(argv))
    if isinstance(args.get("workers"), int):
        args["workers"] = [args["workers"]]
    config = CliConfig(**args)
    if config.subcommand == "compare":
        labels = [label for label, _ in config.corpus]
        if len(labels) < 2:
            parser.error("compare needs at least two --corpus LABEL=DIR pairs")
        if len(set(labels)) != len(labels):
            parser.error("corpus labels must be unique")
    return config


def _stopwords(config: CliConfig) -> Set[str]:
    return load_stopwords(config.stopwords) if config.stopwords else set()


def cmd_wordcount(config: CliConfig, out: TextIO, err: TextIO) -> int:
    corpus = ingest_directory(config.input, label=config.input.resolve().name or str(config.input))
    result = run_wordcount(corpus.documents, config.workers[0], partition=config.partition,
                           exchange_timeout=config.exchange_timeout)
    counts = drop_stopwords(result.counts, _stopwords(config))
    table = top_k(counts, corpus.label, config.top)
    out.write(render_table(table, config.format))

    if config.timings_out is not None:
        config.timings_out.write_text(render_timings(result.timings, result.n_workers), encoding="utf-8")
    elif config.timings:
        err.write(render_timings(result.timings, result.n_workers))
    return 0


def cmd_bench(config: CliConfig, out: TextIO, err: TextIO) -> int:
    report = run_bench(config.map, config.n, config.block, config.workers, config.repeat, seed=config.seed)
    out.write(render_bench(report, config.format))
    return 0


def cmd_compare(config: CliConfig, out: TextIO, err: TextIO) -> int:
    corpora = [ingest_directory(directory, label=label) for label, directory in config.corpus]
    results = compare_corpora(corpora, config.workers[0], config.top, config.distinct,
                              stopwords=_stopwords(config), partition=config.partition,
                              exchange_timeout=config.exchange_timeout)
    out.write(render_comparison(results, config.format))
    return 0


COMMANDS = {
    "wordcount": cmd_wordcount,
    "bench": cmd_bench,
    "compare": cmd_compare,
}


def run_command(config: CliConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    logger.debug("running %s", config.subcommand)
    return COMMANDS[config.subcommand](config, out or sys.stdout, err or sys.stderr)
