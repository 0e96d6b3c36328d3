"""Batch orchestration: dataset building, evaluation runs, and the CLI.

The dataset builder turns the synthetic generator into a JSONL training
corpus of (prompt, layout) pairs plus reference statistics; the eval
harness turns any generator into per-prompt and per-category metric
tables. Both are deterministic given their seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .core import (
    CategoryKey,
    Layout,
    TRAINING_CATEGORIES,
    category_of,
    parse_layout,
    serialize_layout,
)
from .genclient import (
    BaselineGenerator,
    EndpointClient,
    EndpointError,
    GeneratorEndpoint,
    SamplingParams,
)
from .metrics import (
    ReferenceStats,
    SampleRecord,
    aggregate,
    area_histogram,
    is_ood,
    mean_histogram,
    spatial_diversity,
)
from .prompts import PROMPT_SUITE, PromptEntry
from .semantics import check_correctness, extract_annotations, render_annotation
from .synthgen import GenConfig, GenerationError, generate_layout, sample_spec
from .validity import validate, validate_text

log = logging.getLogger(__name__)

REPORT_COLUMNS = [
    "row_type",
    "id",
    "category",
    "n_samples",
    "validity_rate",
    "correctness_rate",
    "ood_ratio",
    "wasserstein_in",
    "wasserstein_out",
]


@dataclass(frozen=True)
class DatasetEntry:
    prompt: str
    layout: str
    category: str
    id: str

    def to_json(self) -> dict:
        return {
            "prompt": self.prompt,
            "layout": self.layout,
            "category": self.category,
            "id": self.id,
        }


@dataclass
class BuildResult:
    dataset_path: Path
    stats_path: Path
    n_layouts: int
    n_entries: int
    n_failures: int


def default_stats_path(dataset_path: str | Path) -> Path:
    p = Path(dataset_path)
    return p.with_name(p.stem + ".stats.json")


def build_dataset(
    per_category: int,
    seed: int,
    out_path: str | Path,
    cfg: GenConfig | None = None,
    stats_path: str | Path | None = None,
) -> BuildResult:
    """Generate `per_category` layouts for every configured category,
    annotate them, and write one JSONL entry per (prompt, layout) pair,
    with duplicate annotations removed and order shuffled per layout.

    Also writes the corpus ReferenceStats (mean area histogram + category
    set) next to the dataset. Aborts when more than 10% of generation
    attempts fail, since that points at a mis-configured generator.
    """
    cfg = cfg or GenConfig()
    out_path = Path(out_path)
    stats_path = Path(stats_path) if stats_path else default_stats_path(out_path)
    rng = random.Random(seed)

    entries: list[DatasetEntry] = []
    histograms = []
    n_layouts = 0
    failures = 0
    attempts = 0
    last_error: GenerationError | None = None
    for cat in sorted(cfg.categories):
        produced = 0
        while produced < per_category:
            attempts += 1
            if attempts >= 50 and failures > 0.10 * attempts:
                raise RuntimeError(
                    f"generation failure rate {failures}/{attempts} exceeds 10%; "
                    f"last failure: {last_error}"
                )
            spec = sample_spec(cat, rng.getrandbits(63))
            try:
                layout = generate_layout(spec, cfg)
            except GenerationError as exc:
                failures += 1
                last_error = exc
                continue
            produced += 1
            n_layouts += 1
            histograms.append(area_histogram(layout))
            layout_id = f"{cat.bedrooms}b{cat.bathrooms}t-{produced - 1:05d}"
            texts = sorted({render_annotation(a) for a in extract_annotations(layout)})
            rng.shuffle(texts)
            layout_text = serialize_layout(layout)
            for text in texts:
                entries.append(DatasetEntry(text, layout_text, cat.label, layout_id))

    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", encoding="utf-8", newline="\n") as fh:
        for entry in entries:
            fh.write(json.dumps(entry.to_json(), ensure_ascii=False) + "\n")

    stats = ReferenceStats(mean_histogram(histograms), frozenset(cfg.categories))
    stats.save(stats_path)
    return BuildResult(out_path, stats_path, n_layouts, len(entries), failures)


@dataclass
class VerifyResult:
    n_entries: int
    n_layouts: int
    invalid_layouts: int
    membership_failures: int
    duplicate_entries: int
    annotations_per_layout: float


def verify_dataset(path: str | Path) -> VerifyResult:
    """Independent re-check of a dataset file: every layout must validate
    and every prompt must be a true annotation of its layout."""
    invalid = membership = dupes = 0
    n_entries = 0
    seen: dict[str, frozenset] = {}
    pairs: set[tuple[str, str]] = set()
    per_layout: dict[str, int] = {}
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            obj = json.loads(line)
            n_entries += 1
            key = obj["layout"]
            per_layout[key] = per_layout.get(key, 0) + 1
            if (obj["prompt"], key) in pairs:
                dupes += 1
            pairs.add((obj["prompt"], key))
            if key not in seen:
                layout = parse_layout(key)
                if not validate(layout).valid:
                    invalid += 1
                    seen[key] = frozenset()
                else:
                    seen[key] = frozenset(
                        render_annotation(a) for a in extract_annotations(layout)
                    )
            if obj["prompt"] not in seen[key]:
                membership += 1
    n_layouts = len(seen)
    mean = n_entries / n_layouts if n_layouts else 0.0
    return VerifyResult(n_entries, n_layouts, invalid, membership, dupes, mean)


@dataclass
class EvalReport:
    prompt_results: list
    category_results: list
    samples_per_prompt: int
    generator: str
    incomplete: bool = False
    errors: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "generator": self.generator,
            "samples_per_prompt": self.samples_per_prompt,
            "incomplete": self.incomplete,
            "errors": self.errors,
            "prompts": [r.to_json() for r in self.prompt_results],
            "categories": [r.to_json() for r in self.category_results],
        }

    def to_csv(self) -> str:
        """Stable CSV rendering: one row per prompt, then one per
        category; empty cells for undefined rates; LF line endings."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)

        def cell(value):
            return "" if value is None else repr(float(value))

        for row_type, rows in (("prompt", self.prompt_results), ("category", self.category_results)):
            for r in rows:
                writer.writerow(
                    [
                        row_type,
                        r.id,
                        r.category,
                        r.n_samples,
                        cell(r.validity_rate),
                        cell(r.correctness_rate),
                        cell(r.ood_ratio),
                        cell(r.wasserstein_in),
                        cell(r.wasserstein_out),
                    ]
                )
        return buf.getvalue()


def run_eval(
    generator,
    suite: tuple[PromptEntry, ...],
    samples_per_prompt: int,
    ref: ReferenceStats,
    params: SamplingParams | None = None,
) -> EvalReport:
    """Sample every prompt, score each sample (validity; then correctness,
    OOD and spatial diversity for the valid ones) and aggregate.

    Invalid samples count against validity only. Endpoint failures flag
    the report incomplete instead of aborting the run.
    """
    params = params or SamplingParams()
    records: list[SampleRecord] = []
    errors: list[str] = []
    for entry in suite:
        request = SamplingParams(
            temperature=params.temperature,
            top_p=params.top_p,
            max_tokens=params.max_tokens,
            n=samples_per_prompt,
        )
        try:
            completions = generator.generate(entry.text, request)
        except EndpointError as exc:
            errors.append(f"{entry.id}: {exc}")
            continue
        for text in completions:
            report = validate_text(text)
            if not report.valid:
                records.append(SampleRecord(entry.id, valid=False))
                continue
            layout = parse_layout(text)
            records.append(
                SampleRecord(
                    entry.id,
                    valid=True,
                    correct=check_correctness(entry.text, layout),
                    ood=is_ood(layout, ref),
                    wasserstein=spatial_diversity(layout, ref),
                )
            )
    categories = {e.id: e.category for e in suite}
    prompt_rows, category_rows = aggregate(records, categories)
    return EvalReport(
        prompt_rows,
        category_rows,
        samples_per_prompt,
        generator.__class__.__name__,
        incomplete=bool(errors),
        errors=errors,
    )


def reference_from_generator(
    per_category: int = 25, seed: int = 0, cfg: GenConfig | None = None
) -> ReferenceStats:
    """Desk-scale reference statistics computed straight from the
    synthetic generator, for when no stats file is at hand."""
    cfg = cfg or GenConfig()
    rng = random.Random(seed)
    histograms = []
    for cat in sorted(cfg.categories):
        produced = 0
        while produced < per_category:
            try:
                layout = generate_layout(sample_spec(cat, rng.getrandbits(63)), cfg)
            except GenerationError:
                continue
            histograms.append(area_histogram(layout))
            produced += 1
    return ReferenceStats(mean_histogram(histograms), frozenset(cfg.categories))


# ---------------------------------------------------------------------------
# Configuration file and CLI


@dataclass
class Config:
    gen: GenConfig = field(default_factory=GenConfig)
    endpoint: GeneratorEndpoint | None = None
    sampling: SamplingParams = field(default_factory=SamplingParams)
    adjacency_min_wall: int = 1
    attempt_cap: int = 1000


def load_config(path: str | Path | None) -> Config:
    """Read the JSON config file; every section is optional."""
    if path is None:
        return Config()
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    gen = GenConfig(
        coarse_grid=data.get("coarse_grid", 32),
        categories=frozenset(
            CategoryKey.from_label(c) for c in data.get("categories", [])
        )
        or TRAINING_CATEGORIES,
        max_backtracks=data.get("max_backtracks", 50),
    )
    endpoint = None
    if "endpoint" in data:
        endpoint = GeneratorEndpoint(**data["endpoint"])
    sampling = SamplingParams(**data.get("sampling", {}))
    return Config(
        gen=gen,
        endpoint=endpoint,
        sampling=sampling,
        adjacency_min_wall=data.get("adjacency_min_wall", 1),
        attempt_cap=data.get("attempt_cap", 1000),
    )


def _make_generator(args, config: Config):
    if args.generator == "baseline":
        return BaselineGenerator(seed=args.seed, attempt_cap=config.attempt_cap)
    if config.endpoint is None:
        raise SystemExit("endpoint generator requested but no endpoint configured")
    return EndpointClient(config.endpoint)


def _load_reference(args, config: Config) -> ReferenceStats:
    if getattr(args, "stats", None):
        return ReferenceStats.load(args.stats)
    log.info("no stats file given; computing a reference from the generator")
    return reference_from_generator(cfg=config.gen)


def _cmd_synth(args) -> int:
    config = load_config(args.config)
    result = build_dataset(
        per_category=args.samples,
        seed=args.seed,
        out_path=args.out,
        cfg=config.gen,
        stats_path=args.stats,
    )
    print(
        f"wrote {result.n_entries} entries for {result.n_layouts} layouts to "
        f"{result.dataset_path} (stats: {result.stats_path}, "
        f"{result.n_failures} generation retries)"
    )
    return 0


def _cmd_eval(args) -> int:
    config = load_config(args.config)
    generator = _make_generator(args, config)
    ref = _load_reference(args, config)
    report = run_eval(generator, PROMPT_SUITE, args.samples, ref, params=config.sampling)
    text = report.to_csv() if args.format == "csv" else json.dumps(report.to_json(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
        print(f"wrote report to {args.out}")
    else:
        sys.stdout.write(text)
    if report.incomplete:
        print("report is incomplete (endpoint failures):", file=sys.stderr)
        for err in report.errors:
            print(f"  {err}", file=sys.stderr)
        return 1
    return 0


def _cmd_check(args) -> int:
    config = load_config(args.config)
    results = []
    for line in Path(args.file).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        report = validate_text(line, min_shared=config.adjacency_min_wall)
        item: dict = {"layout": line, **report.to_json()}
        if report.valid:
            layout = parse_layout(line)
            item["category"] = category_of(layout).label
            from .semantics import annotation_to_json

            anns = extract_annotations(layout, min_shared=config.adjacency_min_wall)
            rendered = sorted(
                (render_annotation(a), annotation_to_json(a)) for a in anns
            )
            item["annotations"] = [
                {"text": text, **payload} for text, payload in rendered
            ]
        results.append(item)
    json.dump({"results": results}, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_render(args) -> int:
    from .service import render_svg

    layouts: list[Layout] = []
    for line in Path(args.file).read_text(encoding="utf-8").splitlines():
        if line.strip():
            layouts.append(parse_layout(line))
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for i, layout in enumerate(layouts):
            (out_dir / f"layout-{i:04d}.svg").write_text(render_svg(layout), encoding="utf-8")
        print(f"wrote {len(layouts)} SVG files to {out_dir}")
    else:
        for layout in layouts:
            sys.stdout.write(render_svg(layout))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    config = load_config(args.config)
    ref = _load_reference(args, config)
    service = ServiceConfig(
        generator=args.generator,
        endpoint=config.endpoint,
        stats=ref,
        attempt_cap=config.attempt_cap,
        min_shared=config.adjacency_min_wall,
    )
    uvicorn.run(create_app(service), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="textplan",
        description="Generate, validate, annotate and evaluate text-described floor plans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--config", help="JSON config file")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("synth", help="build a synthetic prompt/layout dataset")
    common(p)
    p.add_argument("--samples", type=int, default=100, help="layouts per category")
    p.add_argument("--out", required=True, help="output JSONL path")
    p.add_argument("--stats", help="reference stats output path")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("eval", help="run the prompt suite against a generator")
    common(p)
    p.add_argument("--samples", type=int, default=100, help="samples per prompt")
    p.add_argument("--generator", choices=["baseline", "endpoint"], default="baseline")
    p.add_argument("--stats", help="reference stats file (default: compute)")
    p.add_argument("--out", help="report output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("check", help="validate and annotate layouts from a file")
    common(p, seed=False)
    p.add_argument("file", help="file with one layout per line")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("render", help="render layouts from a file to SVG")
    common(p, seed=False)
    p.add_argument("file", help="file with one layout per line")
    p.add_argument("--out", help="output directory (default: stdout)")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("serve", help="start the HTTP service")
    common(p)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--generator", choices=["baseline", "endpoint"], default="baseline")
    p.add_argument("--stats", help="reference stats file (default: compute)")
    p.set_defaults(func=_cmd_serve)
    return parser


def cli(argv: list[str] | None = None) -> int:
    """Entry point: exit 0 on success, 1 on operational errors, 2 on
    usage errors (argparse's convention)."""
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
