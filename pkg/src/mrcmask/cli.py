"""Command-line entry point: ingest -> build -> stats -> maskgen -> assemble -> score.

Exit codes: 0 ok, 2 usage, 3 validation failure, 4 I/O failure. Every file
output gets a <out>.manifest.json with the fully resolved configuration;
replay_manifest() regenerates the output byte-identically.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from ._util import json_line, read_jsonl, read_jsonl_lenient, write_jsonl
from .errors import IOFailure, MrcMaskError
from . import assembly, corpus, datasets, length_stats, masking, metrics, tokenization

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# worker plumbing: one initializer-set state object per process, so heavyweight
# arguments (vocabulary, config) are pickled once per worker, not per record.

_STATE: dict = {}


def _init_worker(state: dict) -> None:
    global _STATE
    _STATE = state


def _parallel_map(fn, items, workers: int, chunksize: int = 16):
    """Order-preserving map; output is identical for any worker count."""
    if workers <= 1:
        for item in items:
            yield fn(item)
        return
    import multiprocessing as mp

    with mp.Pool(workers, initializer=_init_worker, initargs=(_STATE,)) as pool:
        yield from pool.imap(fn, items, chunksize)


def _record_id(record: dict) -> str:
    if "id" in record:
        return str(record["id"])
    if "doc_id" in record:
        return f"{record['doc_id']}-{record.get('index', 0)}"
    raise KeyError("record has neither 'id' nor 'doc_id'")


def _ingest_one(record: dict) -> list[dict]:
    paragraphs = corpus.ingest_document(record)
    return [{"doc_id": p.doc_id, "index": p.index, "text": p.text} for p in paragraphs]


def _build_cloze_one(record: dict) -> tuple[str, dict]:
    cfg: datasets.BucketConfig = _STATE["cfg"]
    seed: int = _STATE["seed"]
    paragraph = corpus.Paragraph(str(record["doc_id"]), int(record.get("index", 0)), record["text"])
    sentences = corpus.split_sentences(paragraph)
    result = datasets.build_cloze_example(paragraph, sentences, cfg, seed)
    if isinstance(result, datasets.Skip):
        return "skipped", {"id": result.id, "reason": result.reason}
    return "kept", result.to_record()


def _maskgen_one(record: dict) -> tuple[list[dict], int]:
    vocab: tokenization.Vocabulary = _STATE["vocab"]
    cfg: masking.MaskingConfig = _STATE["cfg"]
    max_len: int = _STATE["max_len"]
    rid = _record_id(record)
    if _STATE["input_format"] == "ids":
        body_ids = [int(x) for x in record["ids"]]
    else:
        body_ids = tokenization.encode(tokenization.tokenize(record["text"], vocab), vocab)
    out = []
    skipped = 0
    for packed in assembly.pack_pretraining_sequences(body_ids, vocab, max_len=max_len, origin=rid):
        seq_id = f"{rid}#{packed.window_index}"
        try:
            duplicates = masking.generate_pretraining_examples(packed.ids, cfg, vocab, seq_id=seq_id)
        except MrcMaskError:
            # Tail chunk shorter than the smallest mask length: skip it, keep streaming.
            skipped += 1
            continue
        for dupe_index, seq in enumerate(duplicates):
            out.append(masking.masked_sequence_record(seq_id, dupe_index, seq))
    return out, skipped


def _assemble_span_one(record: dict) -> list[dict]:
    vocab: tokenization.Vocabulary = _STATE["vocab"]
    policy: assembly.WindowingPolicy = _STATE["policy"]
    rid = _record_id(record)
    question_ids = tokenization.encode(tokenization.tokenize(record["question"], vocab), vocab)
    ctx_tokens, offsets = tokenization.tokenize_with_offsets(record["context"], vocab)
    context_ids = [t.id for t in ctx_tokens]
    answer_span = None
    answer = record.get("answer")
    if answer and answer.get("text"):
        a_start = int(answer["answer_start"])
        a_end = a_start + len(answer["text"])
        overlapping = [
            i for i, (s, e) in enumerate(offsets) if e > a_start and s < a_end
        ]
        if overlapping:
            answer_span = (overlapping[0], overlapping[-1] + 1)
    windows = assembly.assemble_span_input(
        question_ids, context_ids, vocab, policy, origin=rid, answer_token_span=answer_span
    )
    return [w.to_record() for w in windows]


def _assemble_cloze_one(record: dict) -> list[dict]:
    vocab: tokenization.Vocabulary = _STATE["vocab"]
    policy: assembly.WindowingPolicy = _STATE["policy"]
    rid = _record_id(record)
    passage_ids = [t.id for t in assembly.tokenize_blanked_passage(record["passage"], vocab)]
    out = []
    for letter in sorted(record["options"]):
        option_ids = tokenization.encode(
            tokenization.tokenize(record["options"][letter], vocab), vocab
        )
        windows = assembly.assemble_cloze_input(
            option_ids, passage_ids, vocab, policy, origin=f"{rid}#{letter}"
        )
        out.extend(w.to_record() for w in windows)
    return out


def _assemble_pretrain_one(record: dict) -> list[dict]:
    vocab: tokenization.Vocabulary = _STATE["vocab"]
    policy: assembly.WindowingPolicy = _STATE["policy"]
    rid = _record_id(record)
    body_ids = tokenization.encode(tokenization.tokenize(record["text"], vocab), vocab)
    packed = assembly.pack_pretraining_sequences(body_ids, vocab, max_len=policy.max_len, origin=rid)
    return [p.to_record() for p in packed]


def _tokenize_one(record: dict) -> dict:
    vocab: tokenization.Vocabulary = _STATE["vocab"]
    tokens = tokenization.tokenize(record["text"], vocab)
    return {
        "id": _record_id(record),
        "tokens": [t.text for t in tokens],
        "ids": [t.id for t in tokens],
    }


# ---------------------------------------------------------------------------
# manifest handling


def _write_manifest(out_path, subcommand: str, args: argparse.Namespace) -> None:
    resolved = {
        k: v for k, v in vars(args).items() if k not in ("func", "config") and v is not None
    }
    manifest = {
        "tool": "mrcmask",
        "version": __version__,
        "subcommand": subcommand,
        "args": resolved,
    }
    path = Path(str(out_path) + ".manifest.json")
    path.write_text(json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def replay_manifest(manifest_path) -> int:
    """Re-run the recorded subcommand with its resolved arguments."""
    manifest = json.loads(Path(manifest_path).read_text(encoding="utf-8"))
    argv = [manifest["subcommand"]]
    for key, value in manifest["args"].items():
        if key == "subcommand":
            continue
        flag = "--in" if key == "inputs" else "--" + key.replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        elif isinstance(value, list):
            for item in value:
                argv += [flag, str(item)]
        else:
            argv += [flag, str(value)]
    return run(argv)


# ---------------------------------------------------------------------------
# subcommand implementations


def _bucket_config(args, default_task: str | None = None) -> datasets.BucketConfig:
    overrides = {}
    if getattr(args, "max_context", None) is not None:
        overrides["max_context_tokens"] = args.max_context
    if getattr(args, "options_per_passage", None) is not None:
        overrides["options_per_passage"] = args.options_per_passage
    if args.bucket:
        cfg = datasets.BucketConfig.from_bucket_name(args.bucket, **overrides)
        if default_task and cfg.task != default_task:
            raise UsageError(f"bucket {args.bucket} is a {cfg.task} bucket, expected {default_task}")
        return cfg
    if args.min_len is None or args.max_len is None:
        raise UsageError("either --bucket or both --min-len and --max-len are required")
    task = default_task or getattr(args, "task", None)
    if task is None:
        raise UsageError("--task is required when no --bucket is given")
    return datasets.BucketConfig(task=task, min_len=args.min_len, max_len=args.max_len, **overrides)


def _split_paths(out: str) -> dict[str, Path]:
    base = Path(out)
    stem, suffix = (base.name, "") if "." not in base.name else base.name.rsplit(".", 1)
    suffix = f".{suffix}" if suffix else ""
    return {name: base.with_name(f"{stem}.{name}{suffix}") for name in ("train", "dev", "test")}


def _parse_ratios(text: str, task: str) -> tuple[float, float, float]:
    if text == "default":
        return datasets.DEFAULT_SPLIT_RATIOS[task]
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3 or any(p < 0 for p in parts) or sum(parts) <= 0:
        raise UsageError("--split wants three nonnegative ratios like 0.8,0.1,0.1")
    return tuple(parts)  # type: ignore[return-value]


def cmd_ingest(args) -> int:
    _STATE.clear()
    records = read_jsonl(args.inputs[0])
    n = write_jsonl(
        args.out,
        (rec for batch in _parallel_map(_ingest_one, records, args.workers) for rec in batch),
    )
    _write_manifest(args.out, "ingest", args)
    print(f"ingest: wrote {n} paragraphs to {args.out}", file=sys.stderr)
    return EXIT_OK


def _open_split_writers(args, cfg):
    if args.split is None:
        return None
    ratios = _parse_ratios(args.split, cfg.task)
    return ratios, {name: open(path, "w", encoding="utf-8") for name, path in _split_paths(args.out).items()}


def cmd_build_span(args) -> int:
    cfg = _bucket_config(args, "span")
    if args.split is not None and args.seed is None:
        raise UsageError("--seed is required when --split is used")
    split = _open_split_writers(args, cfg)
    rejects = open(args.rejects, "w", encoding="utf-8") if args.rejects else None
    kept = rejected = 0
    try:
        with open(args.out, "w", encoding="utf-8") as out:
            for kind, payload in datasets.bucket_span_examples(
                read_jsonl_lenient(args.inputs[0]), cfg
            ):
                if kind == "kept":
                    record = payload.to_record()
                    out.write(json_line(record) + "\n")
                    if split is not None:
                        ratios, writers = split
                        name = datasets.split_name(payload.id, args.seed, ratios)
                        writers[name].write(json_line(record) + "\n")
                    kept += 1
                else:
                    rejected += 1
                    if rejects:
                        rejects.write(json_line(payload) + "\n")
    finally:
        if rejects:
            rejects.close()
        if split is not None:
            for f in split[1].values():
                f.close()
    _write_stats_sidecar(args.out, "span", cfg)
    _write_manifest(args.out, "build-span", args)
    print(f"build-span: kept {kept}, rejected {rejected}", file=sys.stderr)
    return EXIT_OK


def cmd_build_cloze(args) -> int:
    cfg = _bucket_config(args, "cloze")
    _STATE.clear()
    _STATE.update({"cfg": cfg, "seed": args.seed})
    split = _open_split_writers(args, cfg)
    skips = open(args.skips, "w", encoding="utf-8") if args.skips else None
    kept = skipped = 0
    try:
        with open(args.out, "w", encoding="utf-8") as out:
            for kind, record in _parallel_map(
                _build_cloze_one, read_jsonl(args.inputs[0]), args.workers
            ):
                if kind == "kept":
                    out.write(json_line(record) + "\n")
                    if split is not None:
                        ratios, writers = split
                        name = datasets.split_name(record["id"], args.seed, ratios)
                        writers[name].write(json_line(record) + "\n")
                    kept += 1
                else:
                    skipped += 1
                    if skips:
                        skips.write(json_line(record) + "\n")
    finally:
        if skips:
            skips.close()
        if split is not None:
            for f in split[1].values():
                f.close()
    _write_stats_sidecar(args.out, "cloze", cfg)
    _write_manifest(args.out, "build-cloze", args)
    print(f"build-cloze: kept {kept}, skipped {skipped}", file=sys.stderr)
    return EXIT_OK


def _write_stats_sidecar(out_path, task: str, cfg) -> None:
    try:
        stats = length_stats.collect_stats(out_path, task, name=Path(str(out_path)).name)
    except MrcMaskError:
        return  # empty build: no sidecar
    sidecar = {
        "task": task,
        "bucket": [cfg.min_len, cfg.max_len],
        "summary": stats.summary_rows(),
        "lengths": {str(l): c for l, c in stats.hist.counts.items()},
        "total": stats.hist.total,
    }
    Path(str(out_path) + ".stats.json").write_text(
        json.dumps(sidecar, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )


def cmd_stats(args) -> int:
    names = args.names.split(",") if args.names else [Path(p).name for p in args.inputs]
    if len(names) != len(args.inputs):
        raise UsageError("--names must list one name per --in")
    stats_list = [
        length_stats.collect_stats(path, args.task, name=name)
        for path, name in zip(args.inputs, names)
    ]
    document = length_stats.stats_report(stats_list, args.format)
    if args.out:
        Path(args.out).write_text(document, encoding="utf-8")
        _write_manifest(args.out, "stats", args)
    else:
        sys.stdout.write(document)
    if args.figures:
        from . import figures

        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        figures.save_length_bars(stats_list, fig_dir / f"{args.task}_lengths.png")
        for stat in stats_list:
            safe = "".join(c if c.isalnum() else "_" for c in stat.name)
            figures.save_length_pie(
                stat.hist, stat.name, fig_dir / f"{args.task}_{safe}_pie.png"
            )
    return EXIT_OK


def cmd_dist(args) -> int:
    counts: dict[int, int] = {}
    for path in args.inputs:
        hist = length_stats.answer_length_histogram(path, args.task)
        for length, count in hist.counts.items():
            counts[length] = counts.get(length, 0) + count
    dist = length_stats.LengthDistribution(counts)
    length_stats.save_distribution(dist, args.out)
    _write_manifest(args.out, "dist", args)
    print(f"dist: {dist.total} answers over lengths {dist.min_len}..{dist.max_len}", file=sys.stderr)
    return EXIT_OK


def cmd_maskgen(args) -> int:
    vocab = tokenization.load_vocab(args.vocab)
    dist = length_stats.load_distribution(args.dist_from)
    cfg = masking.MaskingConfig(
        length_dist=dist,
        budget_fraction=args.budget,
        dupe_factor=args.dupe,
        seed=args.seed,
    )
    _STATE.clear()
    _STATE.update(
        {"vocab": vocab, "cfg": cfg, "max_len": args.max_len, "input_format": args.input_format}
    )
    records = read_jsonl(args.inputs[0])
    skipped_total = 0

    def results():
        nonlocal skipped_total
        for batch, skipped in _parallel_map(_maskgen_one, records, args.workers):
            skipped_total += skipped
            yield from batch

    n = write_jsonl(args.out, results())
    _write_manifest(args.out, "maskgen", args)
    note = f", skipped {skipped_total} too-short sequences" if skipped_total else ""
    print(f"maskgen: wrote {n} masked sequences to {args.out}{note}", file=sys.stderr)
    return EXIT_OK


def cmd_assemble(args) -> int:
    vocab = tokenization.load_vocab(args.vocab)
    policy = assembly.WindowingPolicy(max_len=args.max_len, stride=args.stride)
    _STATE.clear()
    _STATE.update({"vocab": vocab, "policy": policy})
    worker = {
        "span": _assemble_span_one,
        "cloze": _assemble_cloze_one,
        "pretrain": _assemble_pretrain_one,
    }[args.task]
    records = read_jsonl(args.inputs[0])
    n = write_jsonl(
        args.out,
        (rec for batch in _parallel_map(worker, records, args.workers) for rec in batch),
    )
    _write_manifest(args.out, "assemble", args)
    print(f"assemble: wrote {n} input sequences to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_tokenize(args) -> int:
    vocab = tokenization.load_vocab(args.vocab)
    _STATE.clear()
    _STATE.update({"vocab": vocab})
    records = read_jsonl(args.inputs[0])
    n = write_jsonl(args.out, _parallel_map(_tokenize_one, records, args.workers))
    _write_manifest(args.out, "tokenize", args)
    print(f"tokenize: wrote {n} records to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_score(args) -> int:
    report = metrics.score_file(
        args.gold,
        args.pred,
        args.task,
        overlap=args.overlap,
        average=args.average,
        reference=args.reference,
    )
    if args.format == "table":
        document = report.to_table()
    else:
        document = json.dumps(report.to_record(), ensure_ascii=False, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(document, encoding="utf-8")
        _write_manifest(args.out, "score", args)
    else:
        sys.stdout.write(document)
    if args.figures:
        from . import figures

        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        figures.save_score_histogram(report, fig_dir / f"score_{args.task}.png")
    if report.missing:
        print(
            f"score: warning: {len(report.missing)} gold ids missing from predictions",
            file=sys.stderr,
        )
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = _bucket_config(args)
    report = datasets.validate_dataset(args.inputs[0], cfg)
    sys.stdout.write(json.dumps(report.to_record(), ensure_ascii=False, indent=2) + "\n")
    return EXIT_OK if report.ok else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# parser


def _add_common(sub, *, inputs=True, out=True, workers=False):
    if inputs:
        sub.add_argument("--in", dest="inputs", action="append", required=True, metavar="FILE")
    if out:
        sub.add_argument("--out", required=True, metavar="FILE")
    if workers:
        sub.add_argument("--workers", type=int, default=1)


def _add_bucket_flags(sub):
    sub.add_argument("--bucket", choices=sorted(datasets.DEFAULT_BUCKETS))
    sub.add_argument("--min-len", type=int, default=None)
    sub.add_argument("--max-len", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrcmask",
        description="Build MRC datasets, length-matched MLM masking data, and score predictions.",
    )
    parser.add_argument("--version", action="version", version=f"mrcmask {__version__}")
    parser.add_argument("--config", default=None, help="TOML config file; flags override it")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    p = sub.add_parser("ingest", help="clean raw documents and split into paragraphs")
    _add_common(p, workers=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("build-span", help="bucket span-extraction candidates by answer length")
    _add_common(p)
    _add_bucket_flags(p)
    p.add_argument("--max-context", type=int, default=None)
    p.add_argument("--rejects", default=None, help="JSONL file for rejected records")
    p.add_argument("--split", default=None, help="'default' or train,dev,test ratios")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_build_span)

    p = sub.add_parser("build-cloze", help="build multiple-choice cloze examples from paragraphs")
    _add_common(p, workers=True)
    _add_bucket_flags(p)
    p.add_argument("--options", dest="options_per_passage", type=int, default=9)
    p.add_argument("--skips", default=None, help="JSONL file for skipped paragraphs")
    p.add_argument("--split", default=None, help="'default' or train,dev,test ratios")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_build_cloze)

    p = sub.add_parser("stats", help="statistics tables with per-length breakdown")
    p.add_argument("--task", choices=("span", "cloze"), required=True)
    p.add_argument("--in", dest="inputs", action="append", required=True, metavar="FILE")
    p.add_argument("--names", default=None, help="comma-separated dataset names")
    p.add_argument("--format", choices=("tsv", "markdown", "json"), default="tsv")
    p.add_argument("--out", default=None)
    p.add_argument("--figures", default=None, help="directory for rendered figures")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("dist", help="answer-length distribution file for maskgen")
    p.add_argument("--task", choices=("span", "cloze"), required=True)
    _add_common(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("maskgen", help="generate masked pretraining sequences")
    _add_common(p, workers=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--dist-from", required=True, help="distribution JSON from `dist`")
    p.add_argument("--budget", type=float, default=0.15)
    p.add_argument("--dupe", type=int, default=10)
    p.add_argument("--max-len", type=int, default=512)
    p.add_argument("--input-format", choices=("text", "ids"), default="text")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_maskgen)

    p = sub.add_parser("assemble", help="assemble model-ready input sequences")
    p.add_argument("--task", choices=("span", "cloze", "pretrain"), required=True)
    _add_common(p, workers=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--max-len", type=int, default=512)
    p.add_argument("--stride", type=int, default=0)
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("tokenize", help="tokenize text records (binding surface)")
    _add_common(p, workers=True)
    p.add_argument("--vocab", required=True)
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("score", help="score a prediction file")
    p.add_argument("--task", choices=("span", "cloze"), required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--overlap", choices=("mcs", "bag"), default="mcs")
    p.add_argument("--average", choices=("macro", "micro"), default="macro")
    p.add_argument("--reference", choices=sorted(metrics.HUMAN_REFERENCE), default=None)
    p.add_argument("--figures", default=None)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("validate", help="check dataset invariants")
    p.add_argument("--task", choices=("span", "cloze"), default=None)
    p.add_argument("--in", dest="inputs", action="append", required=True, metavar="FILE")
    _add_bucket_flags(p)
    p.add_argument("--max-context", type=int, default=None)
    p.set_defaults(func=cmd_validate)

    return parser


def _load_config(path) -> dict:
    try:
        import tomllib  # Python >= 3.11
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except OSError as exc:
        raise IOFailure(f"cannot read config {path}: {exc}") from exc


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser, argv) -> None:
    """Fill unset flags from the config file (flat keys or [subcommand] table)."""
    if not args.config or not args.subcommand:
        return
    config = _load_config(args.config)
    table = config.get(args.subcommand, config)
    explicit = set()
    for item in argv:
        if isinstance(item, str) and item.startswith("--"):
            explicit.add(item[2:].split("=", 1)[0].replace("-", "_"))
    for key, value in table.items():
        if isinstance(value, dict):
            continue
        dest = key.replace("-", "_")
        if dest == "in":
            dest = "inputs"
            value = value if isinstance(value, list) else [value]
        if dest in vars(args) and dest not in explicit and vars(args)[dest] in (None, [], False):
            setattr(args, dest, value)


def run(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if not getattr(args, "subcommand", None):
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        _apply_config(args, parser, argv)
        if args.subcommand in ("build-cloze", "maskgen") and args.seed is None:
            raise UsageError(f"{args.subcommand} requires --seed (reproducibility is mandatory)")
        return args.func(args)
    except UsageError as exc:
        print(f"mrcmask: error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IOFailure as exc:
        print(f"mrcmask: error: io: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"mrcmask: error: io: {exc}", file=sys.stderr)
        return EXIT_IO
    except MrcMaskError as exc:
        print(f"mrcmask: error: validation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (KeyError, ValueError) as exc:
        print(f"mrcmask: error: validation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
