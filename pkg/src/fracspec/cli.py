"""Command-line front end and reproducible experiment recipes.

Usage::

    fracspec <poisson|denoise|denoise-opt|allen-cahn|cahn-hilliard|converge>
             [--config FILE] [--key value ...]

Settings come from a flat key=value config file; ``--key value`` pairs on the
command line override file entries. Every run writes a ``manifest.txt`` into
the output directory echoing the fully resolved configuration (plus the PRNG
algorithm and seed when randomness is involved), so artifacts replay
byte-for-byte from their manifest.

Exit codes: 0 success, 2 configuration or precondition error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import bench, denoise, fieldio, pgm, phasefield, rng
from .fracops import solve_poisson
from .spectral import (GridField, GridSpec, ModeField, forward_transform,
                       inverse_transform, project)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3


# ---------------------------------------------------------------- config --

def read_config_file(path: str) -> dict[str, str]:
    cfg: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            cfg[key.strip()] = value.strip()
    return cfg


def parse_overrides(args: list[str]) -> dict[str, str]:
    """Turn trailing ``--key value`` pairs into a dict."""
    if len(args) % 2 != 0:
        raise ValueError(f"dangling command-line override near {args[-1]!r}")
    cfg = {}
    for flag, value in zip(args[0::2], args[1::2]):
        if not flag.startswith("--") or len(flag) <= 2:
            raise ValueError(f"expected --key value pairs, got {flag!r}")
        cfg[flag[2:]] = value
    return cfg


def resolve_config(defaults: dict[str, str], config_file: str | None,
                   overrides: dict[str, str],
                   required: tuple[str, ...] = ()) -> dict[str, str]:
    cfg = dict(defaults)
    for source in ([read_config_file(config_file)] if config_file else []) + [overrides]:
        for key, value in source.items():
            if key not in defaults and key not in required:
                raise ValueError(f"unknown configuration key {key!r}")
            cfg[key] = value
    for key in required:
        if key not in cfg:
            raise ValueError(f"missing required configuration key {key!r}")
    return cfg


def _as_int(cfg, key) -> int:
    try:
        return int(cfg[key])
    except ValueError as exc:
        raise ValueError(f"{key}={cfg[key]!r} is not an integer") from exc


def _as_float(cfg, key) -> float:
    try:
        return float(cfg[key])
    except ValueError as exc:
        raise ValueError(f"{key}={cfg[key]!r} is not a number") from exc


def _as_bool(cfg, key) -> bool:
    value = cfg[key].lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"{key}={cfg[key]!r} is not a boolean")


def _as_int_list(cfg, key) -> list[int]:
    text = cfg[key].strip()
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"{key}={cfg[key]!r} is not a comma-separated "
                         f"integer list") from exc


def _as_float_list(cfg, key) -> list[float]:
    try:
        return [float(v) for v in cfg[key].split(",")]
    except ValueError as exc:
        raise ValueError(f"{key}={cfg[key]!r} is not a comma-separated "
                         f"number list") from exc


def _out_dir(cfg) -> str:
    out = cfg["out"]
    os.makedirs(out, exist_ok=True)
    return out


def write_manifest(out: str, command: str, cfg: dict[str, str],
                   extra: dict[str, str] | None = None) -> None:
    entries = {"command": command, **cfg, **(extra or {})}
    lines = [f"{k}={entries[k]}" for k in sorted(entries)]
    with open(os.path.join(out, "manifest.txt"), "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def write_keyvalues(path: str, entries: dict[str, object]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for key in entries:
            fh.write(f"{key}={entries[key]}\n")


def _render_unit(values: np.ndarray) -> np.ndarray:
    """Affine map of real nodal data onto [0,1] for figure rendering."""
    lo, hi = float(values.min()), float(values.max())
    if hi <= lo:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)


# ------------------------------------------------------------ subcommands --

POISSON_DEFAULTS = {"d": "1", "n": "16", "s": "0.5", "forcing": "hat",
                    "render": "0", "out": "."}


def cmd_poisson(cfg: dict[str, str]) -> int:
    out = _out_dir(cfg)
    s = _as_float(cfg, "s")
    n = _as_int_list(cfg, "n")
    d = _as_int(cfg, "d")
    if len(n) == 1:
        n = n * d
    spec = GridSpec(tuple(n))
    if cfg["forcing"] == "hat":
        f = project(bench.forcing(bench.product_solution(spec.d), s), spec)
    else:
        loaded = fieldio.read_field(cfg["forcing"])
        if loaded.spec != spec:
            raise ValueError(f"forcing file grid {loaded.spec.n} does not "
                             f"match configured n={spec.n}")
        f = loaded if isinstance(loaded, ModeField) else forward_transform(loaded)
    u = solve_poisson(f, s)
    fieldio.write_field(os.path.join(out, "forcing.fpfld"), f)
    fieldio.write_field(os.path.join(out, "solution.fpfld"), u)
    if _as_bool(cfg, "render"):
        nodal = inverse_transform(u).values.real
        pgm.write_pgm(os.path.join(out, "solution.pgm"),
                      np.atleast_2d(_render_unit(nodal)))
    write_manifest(out, "poisson", cfg)
    return EXIT_OK


DENOISE_DEFAULTS = {"s": "0.35", "beta": "0.0", "alpha": "10.0",
                    "noise": "none", "sigma": "0.15", "seed": "0",
                    "out": "."}


def _noise_spec(cfg) -> denoise.NoiseSpec | None:
    kind = cfg["noise"]
    if kind == "none":
        return None
    return denoise.NoiseSpec(kind=kind, sigma=_as_float(cfg, "sigma"),
                             seed=_as_int(cfg, "seed"))


def cmd_denoise(cfg: dict[str, str]) -> int:
    out = _out_dir(cfg)
    params = denoise.DenoiseParams(_as_float(cfg, "s"), _as_float(cfg, "beta"),
                                   _as_float(cfg, "alpha"))
    original = denoise.Image(pgm.read_pgm(cfg["input"]))
    noise = _noise_spec(cfg)
    observed = original if noise is None else denoise.add_noise(original, noise)
    restored = denoise.denoise(observed, params)

    metrics: dict[str, object] = {}
    if noise is not None:
        pgm.write_pgm(os.path.join(out, "noisy.pgm"), observed.pixels)
        metrics["mse_noisy"] = repr(denoise.mse(observed, original))
        metrics["mse_denoised"] = repr(denoise.mse(restored, original))
        metrics["psnr_noisy"] = repr(denoise.psnr(observed, original))
        metrics["psnr_denoised"] = repr(denoise.psnr(restored, original))
    metrics["mse_vs_observed"] = repr(denoise.mse(restored, observed))
    pgm.write_pgm(os.path.join(out, "denoised.pgm"), restored.pixels)
    write_keyvalues(os.path.join(out, "metrics.txt"), metrics)
    write_manifest(out, "denoise", cfg,
                   {"prng_algorithm": rng.ALGORITHM} if noise else None)
    return EXIT_OK


DENOISE_OPT_DEFAULTS = {"beta": "0.0", "noise": "gaussian", "sigma": "0.15",
                        "seed": "0", "s_lo": "0.05", "s_hi": "0.5",
                        "a_lo": "1.0", "a_hi": "50.0", "out": "."}


def cmd_denoise_opt(cfg: dict[str, str]) -> int:
    out = _out_dir(cfg)
    box = denoise.OptBox(_as_float(cfg, "s_lo"), _as_float(cfg, "s_hi"),
                         _as_float(cfg, "a_lo"), _as_float(cfg, "a_hi"))
    beta = _as_float(cfg, "beta")
    original = denoise.Image(pgm.read_pgm(cfg["input"]))
    noise = _noise_spec(cfg)
    observed = original if noise is None else denoise.add_noise(original, noise)
    fit = denoise.optimize_params(observed, original, box, beta)
    restored = denoise.denoise(
        observed, denoise.DenoiseParams(fit.s, beta, fit.alpha))

    if noise is not None:
        pgm.write_pgm(os.path.join(out, "noisy.pgm"), observed.pixels)
    pgm.write_pgm(os.path.join(out, "denoised.pgm"), restored.pixels)
    write_keyvalues(os.path.join(out, "report.txt"), {
        "seed": cfg["seed"], "prng_algorithm": rng.ALGORITHM,
        "box": f"{box.s_lo},{box.s_hi},{box.a_lo},{box.a_hi}",
        "beta": repr(beta), "iterations": fit.iterations,
        "evaluations": fit.evaluations, "s_opt": repr(fit.s),
        "alpha_opt": repr(fit.alpha), "objective": repr(fit.objective),
        "mse_noisy": repr(denoise.mse(observed, original)),
        "mse_denoised": repr(denoise.mse(restored, original)),
    })
    write_manifest(out, "denoise-opt", cfg, {"prng_algorithm": rng.ALGORITHM})
    return EXIT_OK


PHASE_DEFAULTS = {"n": "128", "s": "0.3", "tilde_eps": "0.125", "tau": "0.01",
                  "steps": "100", "ic": "random", "phi": "0.5", "seed": "0",
                  "snapshots": "", "render": "0", "out": "."}
CH_DEFAULTS = {**PHASE_DEFAULTS, "alpha": "1.0", "ic": "circles"}


def _initial_condition(cfg, spec: GridSpec) -> phasefield.ModeField:
    ic = cfg["ic"]
    if ic == "random":
        return phasefield.preset_random_mix(spec, _as_float(cfg, "phi"),
                                            _as_int(cfg, "seed"))
    if ic == "circles":
        return phasefield.preset_two_circles(spec)
    loaded = fieldio.read_field(ic)
    if loaded.spec != spec:
        raise ValueError(f"initial-condition grid {loaded.spec.n} does not "
                         f"match configured n={spec.n}")
    return loaded if isinstance(loaded, ModeField) else forward_transform(loaded)


def _run_phasefield(cfg: dict[str, str], alpha: float, command: str) -> int:
    out = _out_dir(cfg)
    n = _as_int_list(cfg, "n")
    if len(n) == 1:
        n = n * 2
    spec = GridSpec(tuple(n))
    params = phasefield.PhaseFieldParams(
        spec=spec, s=_as_float(cfg, "s"), alpha=alpha,
        tilde_eps=_as_float(cfg, "tilde_eps"), tau=_as_float(cfg, "tau"),
        steps=_as_int(cfg, "steps"))
    u0 = _initial_condition(cfg, spec)
    snapshot_steps = _as_int_list(cfg, "snapshots")
    trace, final = phasefield.run(params, u0, snapshot_steps=snapshot_steps,
                                  snapshot_dir=out if snapshot_steps else None)
    trace.write_csv(os.path.join(out, "trace.csv"))
    if _as_bool(cfg, "render"):
        for k in snapshot_steps:
            field = fieldio.read_field(
                os.path.join(out, f"field_step{k:06d}.fpfld"))
            pgm.write_pgm(os.path.join(out, f"field_step{k:06d}.pgm"),
                          (field.values.real + 1.0) / 2.0)
    extra = {"prng_algorithm": rng.ALGORITHM} if cfg["ic"] == "random" else None
    write_manifest(out, command, cfg, extra)
    return EXIT_OK


def cmd_allen_cahn(cfg: dict[str, str]) -> int:
    return _run_phasefield(cfg, alpha=0.0, command="allen-cahn")


def cmd_cahn_hilliard(cfg: dict[str, str]) -> int:
    alpha = _as_float(cfg, "alpha")
    if not alpha > 0.0:
        raise ValueError(f"the conserved flow needs alpha > 0, got {alpha}")
    return _run_phasefield(cfg, alpha=alpha, command="cahn-hilliard")


CONVERGE_DEFAULTS = {"kind": "poisson", "s": "0.25",
                     "n_list": "16,32,64,128,256,512", "n_ref": "8192",
                     "taus": "0.2,0.1,0.05,0.025,0.0125", "T": "1.0",
                     "mode": "3", "tilde_eps": "0.125", "expected": "",
                     "window": "0.15", "out": "."}


def cmd_converge(cfg: dict[str, str]) -> int:
    out = _out_dir(cfg)
    s = _as_float(cfg, "s")
    kind = cfg["kind"]
    if kind == "poisson":
        report = bench.poisson_convergence(s, _as_int_list(cfg, "n_list"),
                                           n_ref=_as_int(cfg, "n_ref"))
        expected = -(1.5 - s) if not cfg["expected"] else _as_float(cfg, "expected")
    elif kind == "heat":
        report = bench.heat_convergence(s, _as_float_list(cfg, "taus"),
                                        _as_float(cfg, "T"),
                                        _as_int_list(cfg, "mode"),
                                        tilde_eps=_as_float(cfg, "tilde_eps"))
        expected = 1.0 if not cfg["expected"] else _as_float(cfg, "expected")
    else:
        raise ValueError(f"unknown convergence study kind {kind!r}")

    verdict = report.verdict(expected, _as_float(cfg, "window"))
    with open(os.path.join(out, "report.csv"), "w", encoding="ascii") as fh:
        fh.write("\n".join(report.csv_lines()) + "\n")
    line = (f"{verdict} kind={kind} s={s!r} slope={report.slope!r} "
            f"expected={expected!r} window={cfg['window']}")
    with open(os.path.join(out, "verdict.txt"), "w", encoding="ascii") as fh:
        fh.write(line + "\n")
    print(line)
    write_manifest(out, "converge", cfg)
    return EXIT_OK


# ------------------------------------------------------------------ main --

_COMMANDS = {
    "poisson": (cmd_poisson, POISSON_DEFAULTS, ()),
    "denoise": (cmd_denoise, DENOISE_DEFAULTS, ("input",)),
    "denoise-opt": (cmd_denoise_opt, DENOISE_OPT_DEFAULTS, ("input",)),
    "allen-cahn": (cmd_allen_cahn, PHASE_DEFAULTS, ()),
    "cahn-hilliard": (cmd_cahn_hilliard, CH_DEFAULTS, ()),
    "converge": (cmd_converge, CONVERGE_DEFAULTS, ()),
}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fracspec",
        description="Spectral solvers for fractional Poisson, denoising and "
                    "phase-field problems on the torus.")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--config", default=None, help="key=value config file")
    args, rest = parser.parse_known_args(argv)

    handler, defaults, required = _COMMANDS[args.command]
    try:
        cfg = resolve_config(defaults, args.config, parse_overrides(rest),
                             required)
        return handler(cfg)
    except ValueError as exc:
        print(f"fracspec {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"fracspec {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
