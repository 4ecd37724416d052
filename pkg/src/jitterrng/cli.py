"""Command-line surface: generate, analyze, bounds, calibrate, reproduce.

Exit codes: 0 success, 2 bad arguments, 3 I/O failure,
4 statistical acceptance failure (reproduce only).
"""

from __future__ import annotations

import argparse
import binascii
import dataclasses
import hashlib
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, analysis, bounds, plots, reference, timing
from .rpss import (REAL_CLOCK, SCRIPTED, RpssConfig, RpssEngine,
                   default_tick_ns, derive_obfuscation_seed)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_STATISTICAL = 4

# Host working point for elapsed-tick streams: fine ticks + obfuscation reads
# keep burst durations wide relative to the modulus (see README on calibration).
ELAPSED_TICK_NS = 20

_TABLE_IDS = ("II", "III", "IV", "V", "VI", "VII")


@dataclasses.dataclass
class RunManifest:
    """Re-describes a generate run without ever serializing raw seed material."""
    command: str
    timestamp_utc: str
    package_version: str
    config: dict
    modulus: int
    n_bytes: int
    source: str
    out_format: str
    seed_fingerprint: str
    obfuscation_seed_fingerprint: str
    tick_calibration: dict
    diagnostics: dict
    output_sha256: str

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True)


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _parse_seed(arg: str | None) -> bytes:
    if arg is None:
        return os.urandom(32)
    try:
        material = binascii.unhexlify(arg)
    except (binascii.Error, ValueError) as e:
        raise ValueError(f"--seed must be a hex string: {e}") from None
    return material


def _parse_script(arg: str | None):
    if arg is None:
        return None
    try:
        ticks = tuple(int(t) for t in arg.replace(",", " ").split())
    except ValueError:
        raise ValueError("--script must be a list of integers") from None
    if not ticks:
        raise ValueError("--script must contain at least one tick value")
    return ticks


def _config_echo(cfg: RpssConfig) -> dict:
    d = dataclasses.asdict(cfg)
    script = d.pop("script")
    if script is not None:
        d["script_length"] = len(script)
        d["script_sha256"] = hashlib.sha256(
            np.asarray(script, dtype="<i8").tobytes()).hexdigest()
    return d


def _report_lines(pairs) -> str:
    return "".join(f"{k} = {v}\n" for k, v in pairs)


def _stream_report_pairs(rep: analysis.StreamReport):
    pairs = [
        ("sample_count", rep.sample_count),
        ("shannon_bits_per_byte", f"{rep.shannon_bits_per_byte:.6f}"),
        ("min_entropy_bits_per_byte", f"{rep.min_entropy_bits_per_byte:.4f}"),
    ]
    if rep.chi_square is None:
        pairs.append(("chi_square", "n/a (need >= 1280 bytes)"))
    else:
        pairs.append(("chi_square", f"{rep.chi_square:.1f}"))
        pairs.append(("chi_square_critical", analysis.CHI2_CRITICAL_255))
        pairs.append(("pass_alpha_001", rep.pass_alpha_001))
    return pairs


def _stream_report_doc(rep: analysis.StreamReport) -> dict:
    return {
        "sample_count": rep.sample_count,
        "shannon_bits_per_byte": rep.shannon_bits_per_byte,
        "min_entropy_bits_per_byte": rep.min_entropy_bits_per_byte,
        "chi_square": rep.chi_square,
        "chi_square_critical": analysis.CHI2_CRITICAL_255,
        "pass_alpha_001": rep.pass_alpha_001,
        "byte_histogram": rep.byte_histogram.tolist(),
    }


def _engine_from_args(args, mu: float) -> tuple[RpssEngine, bytes]:
    seed_material = _parse_seed(args.seed)
    script = _parse_script(getattr(args, "script", None))
    jitter = getattr(args, "jitter", REAL_CLOCK)
    if jitter == SCRIPTED and script is None:
        raise ValueError("scripted jitter requires --script")
    cfg = RpssConfig(
        mu=mu,
        array_length=args.array_length,
        security_discard=args.discard,
        tick_ns=args.tick_ns,
        obfuscation_enabled=args.obfuscation,
        jitter_source=jitter,
        script=script,
    )
    return RpssEngine(cfg, seed_material), seed_material


def cmd_generate(args) -> int:
    if args.n_bytes < 1:
        print("error: --bytes must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        engine, seed_material = _engine_from_args(args, args.mu)
        data = engine.generate_bytes(args.n_bytes, args.modulus, source=args.source)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    out = Path(args.out)
    payload = data.hex().encode() if args.out_format == "hex" else data
    calib = timing.calibrate(trials=20_000)
    manifest = RunManifest(
        command="generate",
        timestamp_utc=_utc_now(),
        package_version=__version__,
        config=_config_echo(engine.config),
        modulus=args.modulus,
        n_bytes=args.n_bytes,
        source=args.source,
        out_format=args.out_format,
        seed_fingerprint=engine.gen.seed_fingerprint(),
        obfuscation_seed_fingerprint=engine.obf_gen.seed_fingerprint(),
        tick_calibration={
            "recommended_tick_ns": calib.recommended_tick_ns,
            "min_positive_delta_ns": calib.min_positive_delta_ns,
            "trials": calib.trials,
        },
        diagnostics=dataclasses.asdict(engine.diagnostics),
        output_sha256=hashlib.sha256(data).hexdigest(),
    )
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(payload)
        Path(str(out) + ".manifest.json").write_text(manifest.to_json() + "\n")
    except OSError as e:
        print(f"error: cannot write output: {e}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.n_bytes} bytes ({args.out_format}) to {out}")
    print(f"manifest: {out}.manifest.json")
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        data = Path(args.in_path).read_bytes()
    except OSError as e:
        print(f"error: cannot read input: {e}", file=sys.stderr)
        return EXIT_IO
    if not data:
        print("error: input file is empty", file=sys.stderr)
        return EXIT_IO
    rep = analysis.analyze_bytes(data)

    if args.report_format == "structured":
        text = json.dumps(_stream_report_doc(rep), indent=2) + "\n"
    else:
        text = _report_lines(_stream_report_pairs(rep))
    sys.stdout.write(text)

    if args.out:
        out = Path(args.out)
        try:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(_report_lines(_stream_report_pairs(rep)))
            Path(out.with_suffix(out.suffix + ".json")).write_text(
                json.dumps(_stream_report_doc(rep), indent=2) + "\n")
            if not args.no_figures:
                fig = out.with_suffix(".hist.png")
                plots.byte_histogram_figure(
                    rep.byte_histogram, fig,
                    title=f"Byte distribution of {Path(args.in_path).name}")
                print(f"figure: {fig}")
        except OSError as e:
            print(f"error: cannot write report: {e}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def cmd_bounds(args) -> int:
    if (args.mu is None) == (args.epsilon is None):
        print("error: supply exactly one of --mu or --epsilon", file=sys.stderr)
        return EXIT_USAGE
    M = args.modulus
    try:
        if args.epsilon is not None:
            mu_star = bounds.invert_bound(args.epsilon, M)
            pairs = [
                ("modulus", M),
                ("epsilon", args.epsilon),
                ("minimum_mu", f"{mu_star:.4f}"),
                ("deviation_bound_at_minimum", f"{bounds.deviation_bound(mu_star, M):.6e}"),
            ]
            if M in reference.MIN_MU:
                exact, conservative, empirical = reference.MIN_MU[M]
                pairs += [
                    ("reference_exact_mu", exact),
                    ("reference_conservative_mu", conservative),
                    ("reference_empirical_mu", empirical),
                ]
        else:
            rep = bounds.per_byte_report(args.mu, M)
            pairs = [
                ("mu", rep.mu),
                ("modulus", rep.modulus),
                ("deviation_bound", f"{rep.deviation_bound:.6e}"),
                ("min_entropy_per_sample_bits", f"{rep.min_entropy_per_sample:.5f}"),
                ("shannon_limit_per_byte", f"{rep.shannon_limit_per_byte:.4f}"),
            ]
            if rep.samples_per_byte is not None:
                pairs += [
                    ("samples_per_byte", rep.samples_per_byte),
                    ("min_entropy_per_byte_bits", f"{rep.min_entropy_per_byte:.5f}"),
                ]
            else:
                pairs.append(("samples_per_byte",
                              "n/a (residue width does not divide 8)"))
            quoted = reference.QUOTED_MIN_ENTROPY_PER_BYTE.get((rep.mu, M))
            if quoted is not None:
                # reference figure with unspecified derivation; shown, not reconciled
                pairs.append(("reference_quoted_min_entropy_per_byte", quoted))
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    text = _report_lines(pairs)
    sys.stdout.write(text)
    if args.out:
        out = Path(args.out)
        try:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text)
            if not args.no_figures:
                fig = out.with_suffix(".curves.png")
                plots.deviation_bound_figure(
                    fig, reference_points={m: v[0] for m, v in reference.MIN_MU.items()})
                print(f"figure: {fig}")
        except OSError as e:
            print(f"error: cannot write report: {e}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def cmd_calibrate(args) -> int:
    res = timing.calibrate(trials=args.trials)
    pairs = [
        ("trials", res.trials),
        ("min_positive_delta_ns", res.min_positive_delta_ns),
        ("zero_delta_fraction", f"{res.zero_delta_fraction:.4f}"),
        ("recommended_tick_ns", res.recommended_tick_ns),
    ]
    for delta, count in res.common_deltas:
        pairs.append((f"delta_{delta}ns_count", count))
    sys.stdout.write(_report_lines(pairs))
    return EXIT_OK


# ---------------------------------------------------------------------------
# reproduce: re-run the reference experiments and compare

def _derived_seed(base: bytes, label: str, index: int) -> bytes:
    return hashlib.sha256(base + f":{label}:{index}".encode()).digest()


def _experiment_config(args, mu: float, **overrides) -> RpssConfig:
    kwargs = dict(
        mu=mu,
        security_discard=args.discard,
        tick_ns=args.tick_ns,
        obfuscation_enabled=args.obfuscation,
        jitter_source=getattr(args, "jitter", REAL_CLOCK),
        script=_parse_script(getattr(args, "script", None)),
    )
    kwargs.update(overrides)
    return RpssConfig(**kwargs)


def _moment_experiment(table: str, args, out_dir: Path, lines: list[str]) -> bool:
    mu = 7.0 if table == "II" else 100.0
    n = 10**6
    runs = 5 if args.scale == "full" else 1
    env = reference.MOMENT_ENVELOPES[mu]
    ref = reference.MOMENT_RUNS[mu]
    base = _parse_seed(args.seed)
    lines.append(f"experiment = count moments, mu={mu:g}, {runs} run(s) of {n:,} counts")
    lines.append(f"theoretical = {ref['theoretical']}")
    if getattr(args, "jitter", REAL_CLOCK) == SCRIPTED:
        lines.append("note = mocked jitter: unpredictability claims not exercised")
    ok = True
    last_counts = None
    for r in range(runs):
        cfg = _experiment_config(args, mu)
        eng = RpssEngine(cfg, _derived_seed(base, table, r))
        counts = eng.generate_counts(n)
        last_counts = counts
        rep = analysis.moments(counts)
        measured = (rep.mean, rep.variance, rep.skewness, rep.excess_kurtosis)
        run_ok = all(lo <= v <= hi for v, (lo, hi) in zip(
            measured, (env["mean"], env["variance"], env["skewness"],
                       env["excess_kurtosis"])))
        ok &= run_ok
        lines.append(
            f"run_{r + 1} = mean {rep.mean:.4f}, variance {rep.variance:.4f}, "
            f"skewness {rep.skewness:.4f}, excess_kurtosis {rep.excess_kurtosis:.4f} "
            f"-> {'PASS' if run_ok else 'FAIL'}")
    lines.append(f"envelopes = {env}")
    if not args.no_figures and last_counts is not None:
        fig = out_dir / f"table_{table}_counts.png"
        plots.count_distribution_figure(last_counts, mu, fig)
        lines.append(f"figure = {fig}")
    return ok


def _uniformity_experiment(table: str, args, out_dir: Path, lines: list[str]) -> bool:
    mu, M = (7.0, 4) if table == "IV" else (100.0, 16)
    n_bytes = 10**6
    runs = 10
    thr = reference.UNIFORMITY_THRESHOLDS
    base = _parse_seed(args.seed)
    lines.append(f"experiment = count-stream uniformity, mu={mu:g}, modulus={M}, "
                 f"{runs} runs of {n_bytes:,} bytes")
    if getattr(args, "jitter", REAL_CLOCK) == SCRIPTED:
        lines.append("note = mocked jitter: unpredictability claims not exercised")
    measured = []
    chi_pass = 0
    ent_ok = True
    for r in range(runs):
        cfg = _experiment_config(args, mu)
        eng = RpssEngine(cfg, _derived_seed(base, table, r))
        rep = analysis.analyze_bytes(eng.generate_bytes(n_bytes, M))
        measured.append((rep.shannon_bits_per_byte, rep.min_entropy_bits_per_byte,
                         rep.chi_square))
        run_ent_ok = (rep.shannon_bits_per_byte >= thr["shannon"]
                      and rep.min_entropy_bits_per_byte >= thr["min_entropy"])
        ent_ok &= run_ent_ok
        chi_pass += bool(rep.pass_alpha_001)
        lines.append(
            f"run_{r + 1} = shannon {rep.shannon_bits_per_byte:.4f}, "
            f"min_entropy {rep.min_entropy_bits_per_byte:.3f}, "
            f"chi_square {rep.chi_square:.1f} "
            f"-> {'PASS' if run_ent_ok and rep.pass_alpha_001 else 'FAIL'}")
    ok = ent_ok and chi_pass >= thr["chi_square_passes_of_10"]
    lines.append(f"chi_square_passes = {chi_pass}/10 (need >= "
                 f"{thr['chi_square_passes_of_10']})")
    lines.append(f"thresholds = shannon >= {thr['shannon']}, "
                 f"min_entropy >= {thr['min_entropy']}")
    if not args.no_figures:
        fig = out_dir / f"table_{table}_chi_square.png"
        plots.uniformity_runs_figure(measured, reference.UNIFORMITY_RUNS[(mu, M)],
                                     fig, f"mu={mu:g}, M={M}")
        lines.append(f"figure = {fig}")
    return ok


def _elapsed_experiment(args, out_dir: Path, lines: list[str]) -> bool:
    if getattr(args, "jitter", REAL_CLOCK) == SCRIPTED:
        lines.append("skipped = elapsed-tick uniformity requires the real clock; "
                     "scripted jitter replays fixed ticks and cannot exercise it")
        return True
    n_bytes = 10**6
    runs = 10 if args.scale == "full" else 2
    thr = reference.ELAPSED_THRESHOLDS
    tick = args.tick_ns if args.tick_ns is not None else ELAPSED_TICK_NS
    base = _parse_seed(args.seed)
    lines.append(f"experiment = elapsed-tick uniformity, modulus=16, "
                 f"{runs} run(s) of {n_bytes:,} bytes per mu, tick_ns={tick}, "
                 f"obfuscation on")
    ok = True
    for mu in (100.0, 200.0):
        for r in range(runs):
            cfg = RpssConfig(mu=mu, security_discard=args.discard, tick_ns=tick,
                             obfuscation_enabled=True)
            eng = RpssEngine(cfg, _derived_seed(base, f"VI:{mu}", r))
            rep = analysis.analyze_bytes(eng.generate_bytes(n_bytes, 16,
                                                            source="elapsed"))
            run_ok = (rep.shannon_bits_per_byte >= thr["shannon"]
                      and rep.min_entropy_bits_per_byte >= thr["min_entropy"])
            ok &= run_ok
            lines.append(
                f"mu_{mu:g}_run_{r + 1} = shannon {rep.shannon_bits_per_byte:.4f}, "
                f"min_entropy {rep.min_entropy_bits_per_byte:.3f} "
                f"-> {'PASS' if run_ok else 'FAIL'}")
        if not args.no_figures:
            cfg = RpssConfig(mu=mu, security_discard=args.discard, tick_ns=tick,
                             obfuscation_enabled=True)
            eng = RpssEngine(cfg, _derived_seed(base, f"VI-fig:{mu}", 0))
            ticks_sample = eng.generate_elapsed(200_000)
            fig = out_dir / f"table_VI_elapsed_mu{mu:g}.png"
            plots.elapsed_distribution_figure(ticks_sample, fig, tick)
            lines.append(f"figure = {fig}")
    lines.append(f"thresholds = shannon >= {thr['shannon']}, "
                 f"min_entropy >= {thr['min_entropy']}")
    return ok


def _scale_experiment(args, out_dir: Path, lines: list[str]) -> bool:
    sizes = [10**6] if args.scale == "desk" else [10**6, 10**7, 10**8]
    base = _parse_seed(args.seed)
    lines.append(f"experiment = large-scale convergence, sizes {sizes}")
    ok = True
    for mu, M in ((7.0, 4), (100.0, 16)):
        rows = []
        for size in sizes:
            cfg = _experiment_config(args, mu)
            eng = RpssEngine(cfg, _derived_seed(base, f"VII:{mu}", size))
            rep = analysis.analyze_bytes(eng.generate_bytes(size, M))
            rows.append((size, rep.shannon_bits_per_byte,
                         rep.min_entropy_bits_per_byte))
            thr = reference.SCALE_THRESHOLDS.get(size)
            verdict = ""
            if thr:
                row_ok = rep.shannon_bits_per_byte >= thr["shannon"]
                if thr["min_entropy"] is not None:
                    row_ok &= rep.min_entropy_bits_per_byte >= thr["min_entropy"]
                ok &= row_ok
                verdict = f" -> {'PASS' if row_ok else 'FAIL'}"
            lines.append(
                f"mu_{mu:g}_{size} = shannon {rep.shannon_bits_per_byte:.6f}, "
                f"min_entropy {rep.min_entropy_bits_per_byte:.4f}{verdict}")
        if not args.no_figures:
            fig = out_dir / f"table_VII_convergence_mu{mu:g}.png"
            plots.convergence_figure(rows, fig, f"mu={mu:g}, M={M}")
            lines.append(f"figure = {fig}")
    return ok


def cmd_reproduce(args) -> int:
    table = args.table
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        print(f"error: cannot create output directory: {e}", file=sys.stderr)
        return EXIT_IO

    lines: list[str] = [f"table = {table}", f"scale = {args.scale}",
                        f"timestamp_utc = {_utc_now()}"]
    try:
        if table in ("II", "III"):
            ok = _moment_experiment(table, args, out_dir, lines)
        elif table in ("IV", "V"):
            ok = _uniformity_experiment(table, args, out_dir, lines)
        elif table == "VI":
            ok = _elapsed_experiment(args, out_dir, lines)
        else:
            ok = _scale_experiment(args, out_dir, lines)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    lines.append(f"result = {'PASS' if ok else 'FAIL'}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    try:
        (out_dir / f"table_{table}_report.txt").write_text(text)
    except OSError as e:
        print(f"error: cannot write report: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if ok else EXIT_STATISTICAL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="jitterrng",
        description="Timing-jitter random byte generator: Poisson counts from "
                    "timed permutation bursts, projected to uniform bytes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add_engine_args(sp, with_jitter=True):
        sp.add_argument("--seed", help="hex seed material (>= 32 hex chars); "
                                       "default: fresh OS entropy")
        sp.add_argument("--discard", type=int, default=1024,
                        help="security discard: initial outputs dropped (default 1024)")
        sp.add_argument("--tick-ns", dest="tick_ns", type=int, default=None,
                        help="tick size in ns (default: env JITTERRNG_TICK_NS or 100)")
        sp.add_argument("--array-length", type=int, default=4,
                        help="permutation array length (default 4)")
        sp.add_argument("--obfuscation", action="store_true",
                        help="enable extra pseudo-random clock reads inside bursts")
        if with_jitter:
            sp.add_argument("--jitter", choices=[REAL_CLOCK, SCRIPTED],
                            default=REAL_CLOCK)
            sp.add_argument("--script",
                            help="comma-separated tick values (scripted jitter)")

    g = sub.add_parser("generate", help="write pipeline output bytes")
    g.add_argument("--mu", type=float, required=True)
    g.add_argument("--modulus", "-M", type=int, required=True)
    g.add_argument("--bytes", dest="n_bytes", type=int, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--source", choices=["counts", "elapsed"], default="counts")
    g.add_argument("--format", dest="out_format", choices=["raw", "hex"],
                   default="raw")
    add_engine_args(g)
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="entropy/uniformity report for a byte file")
    a.add_argument("--in", dest="in_path", required=True)
    a.add_argument("--format", dest="report_format", choices=["text", "structured"],
                   default="text")
    a.add_argument("--out", help="write delimited report here (plus .json and figure)")
    a.add_argument("--no-figures", action="store_true")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bounds", help="deviation / min-entropy bounds")
    b.add_argument("--modulus", "-M", type=int, required=True)
    b.add_argument("--mu", type=float)
    b.add_argument("--epsilon", type=float)
    b.add_argument("--out", help="write delimited report here (plus figure)")
    b.add_argument("--no-figures", action="store_true")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("calibrate", help="probe monotonic clock granularity")
    c.add_argument("--trials", type=int, default=200_000)
    c.set_defaults(func=cmd_calibrate)

    r = sub.add_parser("reproduce", help="re-run a reference experiment")
    r.add_argument("--table", choices=_TABLE_IDS, required=True,
                   help="II/III: count moments; IV/V: count uniformity; "
                        "VI: elapsed uniformity; VII: large-scale convergence")
    r.add_argument("--scale", choices=["desk", "full"], default="desk")
    r.add_argument("--out-dir", default="reports")
    r.add_argument("--no-figures", action="store_true")
    add_engine_args(r)
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
