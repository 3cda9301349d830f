"""Batch front end: ``monotone-adv run <config>`` and ``monotone-adv audit <transcript>``.

A config is a flat ``key = value`` file (``#`` starts a comment)::

    experiment = oig_lb
    seed = 7
    trials = 10000
    n = 200
    min.mean = 0.25

``min.<field>`` / ``max.<field>`` keys are thresholds on the summary row;
``run`` exits 0 only if every one of them holds. ``n`` may be a comma
separated list, which runs one experiment per value (and ``--svg`` plots
error against n).

Everything is validated before the output directory is touched. Failures
print one line ``monotone-adv: <CODE>: <message>`` to stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .exceptions import InvalidParametersError
from .experiments import EXPERIMENTS, ExperimentResult, _suite_from, plot_error_vs_n
from .pipeline import TranscriptFormatError, audit_transcript

ENV_OUT = "MONOTONE_ADV_OUT"
DEFAULT_OUT = "results"

# exit codes
OK, THRESHOLD_FAILED, USAGE, PARSE, UNKNOWN, PARAM, IO, TRANSCRIPT = 0, 1, 2, 3, 4, 5, 6, 7
CODES = {USAGE: "E_USAGE", PARSE: "E_PARSE", UNKNOWN: "E_UNKNOWN_ID", PARAM: "E_PARAM", IO: "E_IO", TRANSCRIPT: "E_TRANSCRIPT"}


class CliError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _int(v: str) -> int:
    return int(v)


def _opt_int(v: str) -> int | None:
    return None if v.lower() in ("", "none") else int(v)


def _float(v: str) -> float:
    x = float(v)
    if not math.isfinite(x):
        raise ValueError(v)
    return x


def _opt_float(v: str) -> float | None:
    return None if v.lower() in ("", "none") else _float(v)


def _str(v: str) -> str:
    return v


def _ints(v: str) -> list[int]:
    return [int(s) for s in v.split(",")]


# key -> (parser, default); None default means required
_SCHEMAS: dict[str, dict[str, tuple]] = {
    "oig_lb": {"n": (_ints, None)},
    "oig_lb_general": {"n": (_ints, None), "k": (_opt_int, "none"), "c": (_float, "4")},
    "majority_lb": {
        "n": (_ints, None),
        "d": (_int, "1"),
        "c": (_float, "4"),
        "voter": (_str, "majority_of_three"),
        "erm": (_str, "adversarial"),
        "K": (_opt_int, "none"),
        "m": (_opt_int, "none"),
        "floor": (_opt_float, "none"),
        "scheme_seed": (_int, "0"),
    },
    "erm_ub": {
        "suite": (_str, None),
        "erm_mode": (_str, "worst"),
        "delta": (_float, "0.01"),
        "n": (_ints, None),
        "d": (_int, "1"),
        "k": (_opt_int, "none"),
        "c": (_float, "4"),
        "m": (_opt_int, "none"),
        "voter": (_str, "majority_of_three"),
        "K": (_opt_int, "none"),
        "scheme_seed": (_int, "0"),
    },
    "oblivious_oig": {"n": (_ints, None), "m": (_int, None)},
    "coupon": {"n": (_ints, None), "d": (_int, "1"), "c": (_float, "4"), "r": (_opt_int, "none")},
}
_COMMON = {"experiment": (_str, None), "seed": (_int, None), "trials": (_int, None), "transcripts": (_int, "0")}


@dataclass
class RunPlan:
    config_path: str
    resolved: dict  # every key explicit, including defaults
    thresholds: list[tuple[str, str, float]]  # (kind, field, value)
    runs: list[dict]  # keyword arguments per experiment call
    stems: list[str]


def parse_config(text: str) -> tuple[dict[str, str], list[tuple[str, str, float]]]:
    raw: dict[str, str] = {}
    thresholds = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(PARSE, f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise CliError(PARSE, f"config line {lineno}: empty key")
        if key in raw or any(key == f"{k}.{f}" for k, f, _ in thresholds):
            raise CliError(PARSE, f"config line {lineno}: duplicate key {key!r}")
        if key.startswith(("min.", "max.")):
            kind, fld = key.split(".", 1)
            try:
                thresholds.append((kind, fld, _float(value)))
            except ValueError:
                raise CliError(PARSE, f"config line {lineno}: threshold {key} needs a number") from None
            continue
        raw[key] = value
    return raw, thresholds


def plan_run(path: str) -> RunPlan:
    """Parse and validate a config completely, without writing anything."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise CliError(IO, f"cannot read config {path}: {e.strerror}") from None
    raw, thresholds = parse_config(text)
    for key in ("experiment", "seed", "trials"):
        if key not in raw:
            raise CliError(PARSE, f"missing required key {key!r}")
    exp = raw["experiment"]
    if exp not in _SCHEMAS:
        raise CliError(UNKNOWN, f"unknown experiment {exp!r}")
    schema = {**_COMMON, **_SCHEMAS[exp]}
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise CliError(PARSE, f"unknown key {unknown[0]!r} for experiment {exp}")
    resolved: dict[str, str] = {}
    values: dict = {}
    for key, (conv, default) in schema.items():
        if key not in raw and default is None:
            raise CliError(PARSE, f"missing required key {key!r}")
        text_value = raw.get(key, default)
        try:
            values[key] = conv(text_value)
        except ValueError:
            raise CliError(PARSE, f"bad value for {key}: {text_value!r}") from None
        resolved[key] = text_value
    if values["trials"] < 1:
        raise CliError(PARAM, "trials must be >= 1")
    if values["transcripts"] < 0 or values["transcripts"] > values["trials"]:
        raise CliError(PARAM, "transcripts must lie in [0, trials]")

    runs, stems = [], []
    ns = values.pop("n")
    for n in ns:
        kw = {k: v for k, v in values.items() if k not in ("experiment", "transcripts")}
        kw["n"] = n
        kw = _experiment_kwargs(exp, kw)
        _validate(exp, kw)
        runs.append(kw)
        stems.append(exp if len(ns) == 1 else f"{exp}_n{n}")
    return RunPlan(str(path), resolved, thresholds, runs, stems)


def _experiment_kwargs(exp: str, kw: dict) -> dict:
    if exp == "oig_lb_general" and kw["k"] is None:
        kw["k"] = math.ceil(math.sqrt(kw["n"]))
    if exp == "erm_ub":
        suite = kw["suite"]
        keep = {
            "oig_lb": ("n",),
            "oig_lb_general": ("n", "k", "c"),
            "majority_lb": ("n", "d", "c", "m", "voter", "scheme_seed"),
            "majority_lb_rand": ("n", "d", "c", "m", "voter", "K", "scheme_seed"),
            "oblivious_oig": ("n", "m"),
        }.get(suite)
        if keep is None:
            raise CliError(UNKNOWN, f"unknown suite {suite!r}")
        if suite == "oig_lb_general" and kw["k"] is None:
            kw["k"] = math.ceil(math.sqrt(kw["n"]))
        if suite == "majority_lb_rand" and kw["K"] is None:
            kw["K"] = 1000
        if suite == "oblivious_oig" and kw["m"] is None:
            raise CliError(PARSE, "suite oblivious_oig needs m")
        return {"suite": suite, "erm_mode": kw["erm_mode"], "delta": kw["delta"], "trials": kw["trials"], "seed": kw["seed"], **{k: kw[k] for k in keep}}
    return kw


def _validate(exp: str, kw: dict) -> None:
    """Build the suite (or check the coupon parameters) so bad values fail before any output."""
    from .learners import ERMS

    try:
        if exp == "oig_lb":
            _suite_from({"suite": "oig_lb", "n": kw["n"]})
        elif exp == "oig_lb_general":
            _suite_from({"suite": "oig_lb_general", **kw})
        elif exp == "majority_lb":
            if kw["voter"] not in ("majority_of_three", "mo3", "bagging", "hanneke"):
                raise CliError(UNKNOWN, f"unknown voter {kw['voter']!r}")
            if kw["erm"] not in ERMS:
                raise CliError(UNKNOWN, f"unknown erm {kw['erm']!r}")
            if kw["erm"] == "adversarial" and kw["K"] is not None:
                raise CliError(PARAM, "erm adversarial is defined on the class without copies")
            _suite_from({"suite": "majority_lb", **kw})
        elif exp == "erm_ub":
            if kw["erm_mode"] not in ("worst", "first", "random"):
                raise CliError(UNKNOWN, f"unknown erm_mode {kw['erm_mode']!r}")
            if not 0 < kw["delta"] < 1:
                raise CliError(PARAM, "delta must lie in (0, 1)")
            _suite_from(kw)
        elif exp == "oblivious_oig":
            _suite_from({"suite": "oblivious_oig", **kw})
        elif exp == "coupon":
            n, d, c, r = kw["n"], kw["d"], kw["c"], kw["r"]
            if n < 1 or d < 1:
                raise CliError(PARAM, "n and d must be >= 1")
            if r is None and (n < c * d or n <= d):
                raise CliError(PARAM, f"need n >= c d and n > d, got n={n}, d={d}, c={c:g}")
            if r is not None and r < d:
                raise CliError(PARAM, f"need r >= d, got r={r}")
    except InvalidParametersError as e:
        raise CliError(PARAM, str(e)) from None


def _threshold_lines(result: ExperimentResult, thresholds) -> tuple[list[str], bool]:
    lines, ok = [], True
    for kind, fld, bound in thresholds:
        if fld not in result.summary:
            lines.append(f"FAIL {result.name} {kind}.{fld}: no such summary field")
            ok = False
            continue
        v = float(result.summary[fld])
        passed = v >= bound if kind == "min" else v <= bound
        ok &= passed
        op = ">=" if kind == "min" else "<="
        lines.append(f"{'PASS' if passed else 'FAIL'} {result.name} n={result.params.get('n')} {fld}={v:.6g} {op} {bound:g}")
    return lines, ok


def _suite_for_dump(exp: str, kw: dict):
    if exp == "coupon":
        return None
    if exp == "erm_ub":
        return _suite_from(kw)
    name = {"oig_lb": "oig_lb", "oig_lb_general": "oig_lb_general", "oblivious_oig": "oblivious_oig"}.get(exp, "majority_lb")
    return _suite_from({"suite": name, **kw})


def manifest_text(plan: RunPlan, out: Path, files: list[str]) -> str:
    doc = {
        "artifact_version": __version__,
        "config_path": plan.config_path,
        "files": files,
        "master_seed": int(plan.resolved["seed"]),
        "output_dir": str(out),
        "resolved_config": plan.resolved,
        "thresholds": [f"{k}.{f}={v!r}" for k, f, v in plan.thresholds],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_run(config: str, out: Path, workers: int, svg: bool) -> int:
    plan = plan_run(config)
    exp = plan.resolved["experiment"]
    n_dump = int(plan.resolved["transcripts"])
    files = []
    for stem in plan.stems:
        files += [f"{stem}.csv", f"{stem}_summary.csv"]
    if n_dump:
        files += [f"transcripts/{stem}_trial{t}.txt" for stem in plan.stems for t in range(n_dump)]
    if svg:
        files.append(f"{exp}.svg")
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "manifest.json").write_text(manifest_text(plan, out, files))
    except OSError as e:
        raise CliError(IO, f"cannot write to {out}: {e.strerror}") from None

    from . import rng as rngmod

    fn = EXPERIMENTS[exp]
    results, all_ok = [], True
    for stem, kw in zip(plan.stems, plan.runs):
        res = fn(**kw, workers=workers)
        results.append(res)
        (out / f"{stem}.csv").write_text(res.trials_csv())
        (out / f"{stem}_summary.csv").write_text(res.summary_csv())
        if n_dump:
            suite = _suite_for_dump(exp, kw)
            if suite is not None:
                (out / "transcripts").mkdir(exist_ok=True)
                for t in range(n_dump):
                    tr = suite.transcript(rngmod.derive_seed(kw["seed"], t))
                    (out / "transcripts" / f"{stem}_trial{t}.txt").write_text(tr.to_text())
        print(f"{res.name} n={res.params.get('n')} trials={res.estimate.trials} mean={res.mean:.6g} se={res.estimate.se:.3g} claim_holds={int(bool(res.summary.get('claim_holds')))}")
        lines, ok = _threshold_lines(res, plan.thresholds)
        for line in lines:
            print(line)
        all_ok &= ok
    if svg:
        plot_error_vs_n(results, out / f"{exp}.svg")
    return OK if all_ok else THRESHOLD_FAILED


def cmd_audit(path: str) -> int:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise CliError(IO, f"cannot read transcript {path}: {e.strerror}") from None
    try:
        problems = audit_transcript(text)
    except TranscriptFormatError as e:
        raise CliError(TRANSCRIPT, str(e)) from None
    if not problems:
        print(f"ok {path}: no violations")
        return OK
    for p in problems:
        print(f"violation {p}")
    return THRESHOLD_FAILED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(USAGE, message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="monotone-adv", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the experiment(s) of a config file")
    run.add_argument("config")
    run.add_argument("--out", help=f"output directory (default ${ENV_OUT} or ./{DEFAULT_OUT})")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--svg", action="store_true", help="also write an SVG chart of error against n")
    audit = sub.add_parser("audit", help="re-check a serialized transcript")
    audit.add_argument("transcript")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        try:
            args = ap.parse_args(argv)
        except SystemExit as e:  # --help
            return OK if e.code in (0, None) else USAGE
        if args.command == "run":
            if args.workers < 1:
                raise CliError(USAGE, "--workers must be >= 1")
            out = Path(args.out or os.environ.get(ENV_OUT) or DEFAULT_OUT)
            return cmd_run(args.config, out, args.workers, args.svg)
        return cmd_audit(args.transcript)
    except CliError as e:
        print(f"monotone-adv: {CODES[e.status]}: {e}", file=sys.stderr)
        return e.status


if __name__ == "__main__":
    sys.exit(main())
