"""Command-line driver.

Tables are written as CSV, single results as a JSON report object, and bit
streams in the ascii or packed encoding. Diagnostics go to stderr.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 timing violation
with ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, replace
from pathlib import Path

import numpy as np

from . import encoding, energy, physics, sampling, stats, stochastic
from .constants import DEFAULT_KT_EV
from .errors import ConfigError, QRNGError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_TIMING = 0, 1, 2, 3
DEFAULT_PRESET = "metallic"
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _count(text: str) -> int:
    value = float(text)
    if not value.is_integer() or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def _device_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("device")
    g.add_argument("--preset", help=f"named device ({', '.join(energy.PRESETS)}); default {DEFAULT_PRESET}")
    g.add_argument("--gamma-ev", type=float, help="custom tunneling energy in eV (needs --t1-s)")
    g.add_argument("--t1-s", type=float, help="custom relaxation time in s (needs --gamma-ev)")
    g.add_argument("--mode", choices=["quantum", "thermal"],
                   help="statistics mode; defaults to the preset's (molecular: quantum, metallic: thermal)")
    g.add_argument("--kt-ev", type=float,
                   help=f"thermal energy kT in eV for thermal mode (default {DEFAULT_KT_EV:g} eV, about 0.1 K)")
    g.add_argument("--sep-nm", type=float, help="dot separation in nm, used with --field-vpm")
    return p


def _bias_options(required: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--mean", type=float, help="target mean of the bit stream, in (0, 1)")
    g.add_argument("--delta-ev", type=float, help="detuning in eV")
    g.add_argument("--voltage-v", type=float, help="interdot voltage in V")
    g.add_argument("--field-vpm", type=float, help="field in V/m along the dot-0 to dot-1 axis")
    return p


def resolve_device(args) -> physics.DeviceParams:
    custom = args.gamma_ev is not None or args.t1_s is not None
    if custom and args.preset is not None:
        raise UsageError("give either --preset or --gamma-ev/--t1-s, not both")
    if custom:
        if args.gamma_ev is None or args.t1_s is None:
            raise UsageError("a custom device needs both --gamma-ev and --t1-s")
        dev = physics.DeviceParams(gamma=args.gamma_ev, t1=args.t1_s)
    else:
        preset = energy.get_preset(args.preset or DEFAULT_PRESET)
        if preset.params is None:
            raise UsageError(f"preset {preset.name!r} is a comparison row with no device physics")
        dev = preset.params
    changes = {}
    if args.mode is not None:
        changes["statistics_mode"] = physics.StatisticsMode.parse(args.mode)
    if args.kt_ev is not None:
        changes["temperature"] = args.kt_ev
    mode = changes.get("statistics_mode", dev.statistics_mode)
    if mode is physics.StatisticsMode.THERMAL and changes.get("temperature", dev.temperature) <= 0:
        changes["temperature"] = DEFAULT_KT_EV
    if args.sep_nm is not None:
        changes["dot_separation"] = (args.sep_nm * 1e-9, 0.0, 0.0)
    return replace(dev, **changes) if changes else dev


def resolve_detuning(args, dev: physics.DeviceParams, default: float | None = None) -> float:
    if args.mean is not None:
        return physics.program_detuning(dev, args.mean)
    if args.delta_ev is not None:
        return args.delta_ev
    if args.voltage_v is not None:
        return physics.detuning_from_voltage(args.voltage_v, dev.mobile_charge)
    if args.field_vpm is not None:
        if dev.separation_length == 0:
            raise UsageError("--field-vpm needs a dot separation (--sep-nm or a molecular preset)")
        axis = np.asarray(dev.dot_separation) / dev.separation_length
        return physics.detuning_from_field(args.field_vpm * axis, dev.dot_separation, dev.mobile_charge)
    if default is None:
        raise UsageError("one of --mean, --delta-ev, --voltage-v, --field-vpm is required")
    return default


def _write(data: bytes | str, out: str | None):
    if isinstance(data, str):
        data = data.encode()
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(out).write_bytes(data)


def _report(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _diag(msg: str):
    print(msg, file=sys.stderr)


def cmd_sweep(args) -> int:
    if args.points < 2 or not args.max > args.min:
        raise UsageError("sweep needs --points >= 2 and --max > --min")
    dev = resolve_device(args)
    g = dev.gamma
    rows = []
    for r in np.linspace(args.min, args.max, args.points):
        gs = physics.ground_state(g, r * g)
        rows.append((float(r), gs.p0, gs.p1, gs.p1, energy.avg_energy_dissipation(g, r * g) / g))
    header = ["delta_over_gamma", "p0", "p1", "mean", "avg_dissipation_over_gamma"]
    if args.format == "report":
        _write(_report([dict(zip(header, row)) for row in rows]), args.out)
    else:
        _write(_csv(header, rows), args.out)
    return EXIT_OK


def _timing(args, dev, n):
    default = sampling.TimingConfig.for_device(dev, n)
    return sampling.TimingConfig(
        bit_time=args.tb_s if args.tb_s is not None else default.bit_time,
        measure_time=args.tm_s if args.tm_s is not None else default.measure_time,
        n_bits=n,
    )


def cmd_sample(args) -> int:
    dev = resolve_device(args)
    delta = resolve_detuning(args, dev)
    timing = _timing(args, dev, args.n)
    report = sampling.validate_timing(timing, dev, zeno_factor=args.zeno_factor)
    if not report.ok:
        _diag(f"timing: {report.summary()}")
        if args.strict:
            return EXIT_TIMING
    stream = sampling.generate_stream(dev, delta, timing, args.seed, ideal_relaxation=not args.non_ideal)
    _write(encoding.encode(stream.bits, args.format), args.out)
    return EXIT_OK


def cmd_stats(args) -> int:
    if args.input == "-":
        data = sys.stdin.buffer.read()
    else:
        data = Path(args.input).read_bytes()
    bits = encoding.decode(data, args.format)
    result = stats.analyze(bits, args.max_lag, expected_mean=args.mean)
    _write(_report(result.to_dict()), args.out)
    return EXIT_OK


def _fom_rows(which):
    names = list(energy.PRESETS) if which == "all" else [which]
    out = []
    for name in names:
        preset = energy.get_preset(name)
        out.append((energy.figures_of_merit(preset), preset.source))
    return out


def cmd_fom(args) -> int:
    rows = _fom_rows(args.which)
    if args.format == "csv":
        text = _csv(
            ["name", "t1_s", "max_bit_rate_bps", "max_avg_power_w"],
            [(f.name, "" if f.t1 is None else f.t1, f.max_bit_rate, f.max_avg_power) for f, _ in rows],
        )
    elif args.format == "report":
        text = _report([dict(asdict(f), source=src) for f, src in rows])
    else:
        lines = [f"{'device':<20} {'T1':>10} {'max bit rate (bps)':>20} {'max avg power (W)':>18}"]
        for f, _ in rows:
            t1 = "-" if f.t1 is None else f"{f.t1:.3g} s"
            lines.append(f"{f.name:<20} {t1:>10} {f.max_bit_rate:>20.4g} {f.max_avg_power:>18.4g}")
        text = "\n".join(lines) + "\n"
    _write(text, args.out)
    return EXIT_OK


def cmd_energy(args) -> int:
    dev = resolve_device(args)
    delta = resolve_detuning(args, dev, default=0.0)
    rep = energy.energy_report(dev, delta, args.bit_rate)
    _write(_report(dict(asdict(rep), detuning=delta, statistics_mode=dev.statistics_mode.value)), args.out)
    return EXIT_OK


def cmd_converge(args) -> int:
    dev = resolve_device(args)
    delta = resolve_detuning(args, dev, default=0.0)
    rows = stats.convergence_report(dev, delta, args.n_grid, args.trials, args.seed, args.workers)
    _write(_csv(["n", "rms_error", "max_error"], [(r.n, r.rms_error, r.max_error) for r in rows]), args.out)
    return EXIT_OK


def cmd_sc(args) -> int:
    dev = resolve_device(args)
    if args.op == "add" and args.select is None:
        raise UsageError("add needs --select")
    if len(args.operands) != 2:
        raise UsageError(f"{args.op} takes 2 operands")
    values = list(args.operands) + ([args.select] if args.op == "add" else [])
    nums = [
        stochastic.encode(v, args.n, dev, sampling.derive_seed(args.seed, i))
        for i, v in enumerate(values)
    ]
    if args.op == "multiply":
        res = stochastic.sc_multiply(*nums)
    elif args.op == "or":
        res = stochastic.sc_or(*nums)
    else:
        res = stochastic.sc_scaled_add(*nums)
    decoded = stochastic.decode(res)
    p = res.nominal_value
    sigma = math.sqrt(p * (1 - p) / args.n)
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        names = ["a", "b", "select"]
        for name, sn in zip(names, nums):
            (d / f"{name}.bits").write_bytes(encoding.to_ascii(sn.bits))
        (d / "result.bits").write_bytes(encoding.to_ascii(res.bits))
    _write(_report({
        "op": args.op,
        "operands": values,
        "n": args.n,
        "seed": args.seed,
        "nominal": p,
        "decoded": decoded,
        "ci95_halfwidth": 1.96 * sigma,
        "within_4sigma": abs(decoded - p) <= 4 * sigma,
    }), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dqd-qrng", description="Double quantum dot random bit generator simulator.")
    sub = parser.add_subparsers(dest="command", required=True)
    dev = _device_options()

    p = sub.add_parser("sweep", parents=[dev], help="mean and dissipation versus detuning/gamma")
    p.add_argument("--min", type=float, default=-10.0)
    p.add_argument("--max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--format", choices=["csv", "report"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sample", parents=[dev, _bias_options(True)], help="generate a bit stream")
    p.add_argument("--n", type=_count, default=1000)
    p.add_argument("--tb-s", type=float, help="bit time in s (default 10 T1)")
    p.add_argument("--tm-s", type=float, help="measurement time in s (default T1/10)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=encoding.FORMATS, default="ascii")
    p.add_argument("--non-ideal", action="store_true", help="model incomplete relaxation between cycles")
    p.add_argument("--strict", action="store_true", help="exit 3 without output on timing violations")
    p.add_argument("--zeno-factor", type=float, default=100.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("stats", help="statistical checks on a stream file")
    p.add_argument("input", help="stream file, or - for stdin")
    p.add_argument("--format", choices=encoding.FORMATS, help="input encoding (sniffed if omitted)")
    p.add_argument("--max-lag", type=int, default=10)
    p.add_argument("--mean", type=float, help="expected mean for the frequency test (default 0.5)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("fom", help="figures of merit per preset")
    p.add_argument("which", nargs="?", default="all", help="preset name or 'all'")
    p.add_argument("--format", choices=["table", "csv", "report"], default="table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fom)

    p = sub.add_parser("energy", parents=[dev, _bias_options(False)], help="energy report at one bias point")
    p.add_argument("--bit-rate", type=float, help="bits/s (default 1/T1)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("converge", parents=[dev, _bias_options(False)], help="sample-mean error versus N")
    p.add_argument("--n-grid", type=_count, nargs="+", default=[100, 1000, 10000, 100000])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("sc", parents=[dev], help="stochastic-computing demo")
    p.add_argument("op", choices=["multiply", "or", "add"])
    p.add_argument("operands", type=float, nargs="+")
    p.add_argument("--select", type=float, help="select probability for add")
    p.add_argument("--n", type=_count, default=100000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out-dir", help="write operand and result streams here (ascii)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sc)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        _diag(f"dqd-qrng: error: {exc}")
        return EXIT_USAGE
    except QRNGError as exc:
        _diag(f"dqd-qrng: error: {exc}")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
