"""``samas`` command-line tool.

Exit codes: 0 success, 2 input/config error, 3 degenerate labels,
4 backend unavailable, 5 hypothesis/reference id mismatch.
stdout (or ``--out``) carries JSON/JSONL only; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from collections import Counter

from . import __version__
from .agents import MockBackend, OpenAIChatBackend, translate_corpus
from .config import RunConfig
from .errors import ConfigError, DegenerateLabels, EmptyInput, SamasError, TransportError
from .jsonl import MalformedLine, dumps, iter_jsonl, write_jsonl
from .metrics import ChrfParams, corpus_chrf
from .router import allocate_workflow, calibrate_thresholds, classify
from .sfs import StylisticFeatureSpectrum, compute_sfs, low_frequency_energy
from .synth import corpus_records, generate_corpus
from .text_signal import TextSegment, WordLengthSignal, prepare_for_wpt, segment_signal
from .wpt import wpt_decompose

EXIT_OK, EXIT_INPUT, EXIT_LABELS, EXIT_BACKEND, EXIT_ALIGN = 0, 2, 3, 4, 5
API_KEY_ENV = "SAMAS_API_KEY"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _err(msg: str) -> None:
    print(f"samas: {msg}", file=sys.stderr)


@contextlib.contextmanager
def _output(path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh
    else:
        yield sys.stdout


def _load_records(path, allow_empty: bool = False) -> list[tuple[int, object]]:
    if not path:
        raise CliError(EXIT_INPUT, "--input is required")
    try:
        records = list(iter_jsonl(path))
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise CliError(EXIT_INPUT, f"{path} is not UTF-8") from None
    if not records and not allow_empty:
        raise CliError(EXIT_INPUT, f"{path} contains no records")
    return records


def _record_id(obj: dict, lineno: int) -> str:
    for key in ("id", "segment_id", "job_id"):
        if key in obj:
            return str(obj[key])
    return f"line-{lineno}"


def _record_sfs(obj: dict, config: RunConfig) -> StylisticFeatureSpectrum:
    """SFS for a corpus record (``text`` or ``signal``) or a serialized SFS record."""
    if "rwe" in obj:
        return StylisticFeatureSpectrum.from_json(obj)
    seg_id = _record_id(obj, 0)
    if "text" in obj:
        signal = segment_signal(TextSegment.from_dict({**obj, "id": seg_id}), config.level)
    elif "signal" in obj:
        values = tuple(int(v) for v in obj["signal"])
        signal = prepare_for_wpt(WordLengthSignal(values, len(values), seg_id), config.level)
    else:
        raise ValueError("record has neither 'text', 'signal' nor SFS fields")
    return compute_sfs(signal, config.filter, config.level)


def _each_sfs(records, config):
    """Yield ``(id, obj, sfs)`` for good records; report bad ones on stderr."""
    for lineno, obj in records:
        if isinstance(obj, MalformedLine):
            _err(f"skipping {obj}")
            continue
        seg_id = _record_id(obj, lineno)
        try:
            yield seg_id, obj, _record_sfs(obj, config)
        except (SamasError, ValueError, KeyError, TypeError) as exc:
            _err(f"skipping segment {seg_id}: {type(exc).__name__}: {exc}")


def _config(args) -> RunConfig:
    try:
        cfg = RunConfig.load(args.config) if args.config else RunConfig()
        return cfg.override(
            filter_name=args.filter,
            level=args.level,
            seed=args.seed,
            concurrency=getattr(args, "concurrency", None),
        )
    except ConfigError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None


def cmd_analyze(args) -> int:
    config = _config(args)
    records = _load_records(args.input)
    out = []
    for seg_id, _, sfs in _each_sfs(records, config):
        rec = sfs.to_json()
        rec["segment_id"] = seg_id
        rec["vector"] = sfs.flatten().tolist()
        out.append(rec)
    if not out:
        raise CliError(EXIT_INPUT, "no segment could be analyzed")
    with _output(args.out) as fh:
        write_jsonl(out, fh)
    return EXIT_OK


def cmd_classify(args) -> int:
    config = _config(args)
    records = _load_records(args.input)
    out = []
    for seg_id, _, sfs in _each_sfs(records, config):
        style = classify(sfs, config.thresholds)
        workflow = allocate_workflow(style, config.workflow_library)
        out.append({
            "id": seg_id,
            "style_class": style.value,
            "H": sfs.global_entropy,
            "E_low": low_frequency_energy(sfs),
            "workflow": [r.value for r in workflow.stages],
        })
    if not out:
        raise CliError(EXIT_INPUT, "no segment could be classified")
    with _output(args.out) as fh:
        write_jsonl(out, fh)
    return EXIT_OK


def cmd_calibrate(args) -> int:
    config = _config(args)
    records = _load_records(args.input)
    samples = []
    for seg_id, obj, sfs in _each_sfs(records, config):
        label = obj.get("style_label")
        if label is None:
            _err(f"skipping segment {seg_id}: no style_label")
            continue
        samples.append((sfs, label))
    try:
        report = calibrate_thresholds(samples, args.grid_resolution)
    except (DegenerateLabels, EmptyInput) as exc:
        raise CliError(EXIT_LABELS, str(exc)) from None
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    with _output(args.out) as fh:
        fh.write(json.dumps(report.to_json(), indent=2) + "\n")
    return EXIT_OK


def _backend(args, config: RunConfig):
    if args.mock:
        return MockBackend()
    api_key = os.environ.get(API_KEY_ENV)
    if not api_key:
        raise CliError(EXIT_BACKEND, f"{API_KEY_ENV} is not set (use --mock for an offline run)")
    backend = OpenAIChatBackend(config.backend.base_url, api_key, config.backend.timeout_s)
    try:
        backend.ping()
    except TransportError as exc:
        raise CliError(EXIT_BACKEND, str(exc)) from None
    return backend


def _error_record(seg_id, exc) -> dict:
    rec = {"id": seg_id, "error": {"type": type(exc).__name__, "message": str(exc)}}
    trace = getattr(exc, "trace", None)
    if trace is not None:
        rec["partial_trace"] = trace.to_json()
    return rec


def cmd_translate(args) -> int:
    config = _config(args)
    records = _load_records(args.input)
    backend = _backend(args, config)

    # slots keep input order; parse failures are filled in directly
    slots: list = []
    segments, positions = [], []
    for lineno, obj in records:
        if isinstance(obj, MalformedLine):
            slots.append(_error_record(f"line-{lineno}", obj))
            continue
        seg_id = _record_id(obj, lineno)
        try:
            if "text" not in obj:
                raise ValueError("record has no 'text' to translate")
            seg = TextSegment.from_dict({**obj, "id": seg_id})
        except (ValueError, TypeError) as exc:
            slots.append(_error_record(seg_id, exc))
            continue
        positions.append(len(slots))
        slots.append(None)
        segments.append(seg)

    results = translate_corpus(segments, config, backend)
    classes = Counter()
    for pos, seg, res in zip(positions, segments, results):
        if isinstance(res, Exception):
            slots[pos] = _error_record(seg.id, res)
        else:
            slots[pos] = res.to_json()
            classes[res.style_class.value] += 1
    failures = sum(1 for s in slots if "error" in s)
    with _output(args.out) as fh:
        write_jsonl(slots, fh)
    summary = ", ".join(f"{k}={v}" for k, v in sorted(classes.items())) or "none"
    _err(f"translated {len(slots) - failures}/{len(slots)} segments ({summary}); failures={failures}")
    return EXIT_OK


_HYP_KEYS = ("final_translation", "translation", "hypothesis", "text")
_REF_KEYS = ("reference", "ref", "text")


def _texts(path, keys) -> dict[str, str]:
    out = {}
    for lineno, obj in _load_records(path, allow_empty=True):
        if isinstance(obj, MalformedLine):
            raise CliError(EXIT_INPUT, f"{path}: {obj}")
        key = next((k for k in keys if k in obj), None)
        if key is None:
            raise CliError(EXIT_INPUT, f"{path} line {lineno}: none of {keys} present")
        out[_record_id(obj, lineno)] = obj[key]
    return out


def cmd_score(args) -> int:
    hyps = _texts(args.hyp or args.input, _HYP_KEYS)
    refs = _texts(args.ref, _REF_KEYS)
    if not hyps or not refs:
        raise CliError(EXIT_ALIGN, "hypothesis or reference file is empty")
    if set(hyps) != set(refs):
        only_h = sorted(set(hyps) - set(refs))[:5]
        only_r = sorted(set(refs) - set(hyps))[:5]
        raise CliError(EXIT_ALIGN, f"segment ids differ (hyp only: {only_h}, ref only: {only_r})")
    params = ChrfParams(max_n=args.max_n, beta=args.beta)
    try:
        report = corpus_chrf(((k, hyps[k], refs[k]) for k in refs), params)
    except SamasError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    with _output(args.out) as fh:
        fh.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK


def cmd_synth(args) -> int:
    config = _config(args)
    corpus = generate_corpus(args.n_per_class, seed=config.seed, length=args.length,
                             filt=config.filter, level=config.level)
    with _output(args.out) as fh:
        write_jsonl(corpus_records(corpus, target_lang=args.target_lang), fh)
    return EXIT_OK


def cmd_dump_wpt(args) -> int:
    config = _config(args)
    out = []
    for lineno, obj in _load_records(args.input):
        if isinstance(obj, MalformedLine):
            _err(f"skipping {obj}")
            continue
        seg_id = _record_id(obj, lineno)
        try:
            if "text" in obj:
                sig = segment_signal(TextSegment.from_dict({**obj, "id": seg_id}), config.level)
            else:
                vals = tuple(int(v) for v in obj["signal"])
                sig = prepare_for_wpt(WordLengthSignal(vals, len(vals), seg_id), config.level)
        except (SamasError, ValueError, KeyError, TypeError) as exc:
            _err(f"skipping segment {seg_id}: {exc}")
            continue
        decomp = wpt_decompose(sig.values, config.filter, config.level)
        out.append({"id": seg_id, **decomp.to_json()})
    with _output(args.out) as fh:
        write_jsonl(out, fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config")
    common.add_argument("--input", help="input JSONL")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--seed", type=int)
    common.add_argument("--level", type=int, help="WPT depth, 1-4")
    common.add_argument("--filter", help="wavelet name (haar, db2, db4)")

    parser = argparse.ArgumentParser(prog="samas", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="corpus JSONL -> SFS JSONL")
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("classify", parents=[common], help="corpus or SFS JSONL -> routing JSONL")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("calibrate", parents=[common], help="grid-search routing thresholds")
    p.add_argument("--grid-resolution", type=float, default=0.05)
    p.set_defaults(func=cmd_calibrate)
    p = sub.add_parser("translate", parents=[common], help="run the agent workflows")
    p.add_argument("--mock", action="store_true", help="use the offline deterministic backend")
    p.add_argument("--concurrency", type=int)
    p.set_defaults(func=cmd_translate)
    p = sub.add_parser("score", parents=[common], help="chrF of hypotheses against references")
    p.add_argument("--hyp", help="hypothesis JSONL (alias of --input)")
    p.add_argument("--ref", required=True, help="reference JSONL")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--beta", type=float, default=2.0)
    p.set_defaults(func=cmd_score)
    p = sub.add_parser("synth", parents=[common], help="write a labeled synthetic corpus")
    p.add_argument("--n-per-class", type=int, default=100)
    p.add_argument("--length", type=int, default=256)
    p.add_argument("--target-lang", default="de")
    p.set_defaults(func=cmd_synth)
    p = sub.add_parser("dump-wpt", parents=[common], help="dump sub-band coefficients as JSON")
    p.set_defaults(func=cmd_dump_wpt)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        _err(str(exc))
        return exc.code
    except ConfigError as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
