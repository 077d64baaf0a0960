"""
Rendering of tables, comparisons, timings and bench results as TSV or JSON.

Output is a pure function of its input so identical runs produce
byte-identical reports (timings aside).
"""

import json
from typing import List, Literal, Sequence, Tuple

from .bench import BenchReport
from .models import DistinctivenessReport, FrequencyTable, StageTimings
from .records import ComparisonRecord, DistinctRecord, FrequencyRecord

OutputFormat = Literal["tsv", "json"]


def _num(value: float) -> str:
    return "%.10g" % value


def frequency_records(table: FrequencyTable) -> List[FrequencyRecord]:
    return [{"word": row.word, "count": row.count, "relfreq": row.relfreq} for row in table.rows]


def distinct_records(report: DistinctivenessReport) -> List[DistinctRecord]:
    return [{"word": row.word, "score": row.score} for row in report.rows]


def render_table(table: FrequencyTable, fmt: OutputFormat = "tsv") -> str:
    if fmt == "json":
        return json.dumps(frequency_records(table), ensure_ascii=False) + "\n"
    return "".join(f"{row.word}\t{row.count}\t{_num(row.relfreq)}\n" for row in table.rows)


def render_comparison(results: Sequence[Tuple[FrequencyTable, DistinctivenessReport]],
                      fmt: OutputFormat = "tsv") -> str:
    if fmt == "json":
        records: List[ComparisonRecord] = [
            {
                "label": table.label,
                "total_words": table.total_words,
                "top": frequency_records(table),
                "distinct": distinct_records(report),
            }
            for table, report in results
        ]
        return json.dumps(records, ensure_ascii=False) + "\n"

    lines = []
    for table, report in results:
        lines.append(f"# {table.label} top\n")
        lines.append(render_table(table, "tsv"))
        lines.append(f"# {report.label} distinct\n")
        lines.extend(f"{row.word}\t{_num(row.score)}\n" for row in report.rows)
    return "".join(lines)


def render_timings(timings: StageTimings, n_workers: int) -> str:
    return json.dumps({"n_workers": n_workers, **timings.model_dump()}) + "\n"


def render_bench(report: BenchReport, fmt: OutputFormat = "tsv") -> str:
    if fmt == "json":
        return report.model_dump_json() + "\n"

    lines = [f"# map={report.map.value} n={report.n} block={report.block_size} repeat={report.repeat} seed={report.seed}\n",
             "run\tengine\tworkers\tseconds\tvalue\tmap_fold_ns\tcombine_ns\n"]
    for run in report.runs:
        map_fold = run.stages.map_fold_ns if run.stages else ""
        combine = run.stages.combine_ns if run.stages else ""
        lines.append(f"{run.run}\t{run.engine}\t{run.workers}\t{run.seconds:.6f}\t{run.value!r}\t{map_fold}\t{combine}\n")
    lines.append("# summary\nengine\tworkers\tmedian_seconds\tvalue\trelative_difference\tagrees\n")
    for summary in report.summaries:
        lines.append(f"{summary.engine}\t{summary.workers}\t{summary.median_seconds:.6f}\t{summary.value!r}\t"
                     f"{summary.relative_difference:.3e}\t{str(summary.agrees).lower()}\n")
    if report.ln2_distance is not None:
        lines.append(f"# ln2_distance\t{report.ln2_distance:.3e}\n")
    return "".join(lines)
