"""Command-line front end.

Subcommands: ``constants``, ``predict``, ``info``, ``slits``, ``simulate``,
``analyze``, ``detect``.  Exit codes: 0 success, 1 domain/configuration
errors, 2 I/O errors, 64 usage errors.

CSV outputs carry their metadata as ``#``-prefixed header comments and
print floats with 17 significant digits, so a written series re-read from
disk is bit-identical to the in-memory one and repeated runs of the same
configuration produce byte-identical files.  ``simulate`` drops a manifest
recording the config, constants, PRNG identity, and SHA-256 of every
output.  The default output directory can be overridden with the
``HOLONOISE_OUTPUT_DIR`` environment variable (an explicit ``--output-dir``
still wins).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .constants import CONSTANTS
from .detection import null_significance, predicted_snr
from .errors import DomainError
from .model import (
    HolographicModel,
    autocorrelation,
    info_budget,
    psd_model,
    transverse_uncertainty,
)
from .slits import SlitSetup, fraunhofer_pattern, information_blurred_pattern, separation_sweep
from .spectral import SpectralEstimate, welch_csd
from .synthesis import ExperimentConfig, TimeSeriesPair, synthesize_pair

PRNG_IDENTIFIER = (
    "philox4x64 counter-based; substreams via "
    "SeedSequence(seed, spawn_key=(stream_id,)); common=0 shot1=1 shot2=2"
)

ENV_OUTPUT_DIR = "HOLONOISE_OUTPUT_DIR"


class UsageError(Exception):
    """Raised by the parser instead of exiting, mapped to exit code 64."""

    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _parse_band(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise DomainError(f"band must look like LO:HI in Hz, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise DomainError(f"band must be numeric LO:HI, got {text!r}") from exc
    return lo, hi


def _json_block(values: dict) -> str:
    """Flat JSON object with every float at 17 significant digits."""
    lines = []
    for key, val in values.items():
        if isinstance(val, bool) or isinstance(val, int):
            rendered = str(val)
        elif isinstance(val, float):
            rendered = format(val, ".16e")
        else:
            rendered = json.dumps(val)
        lines.append(f'  "{key}": {rendered}')
    return "{\n" + ",\n".join(lines) + "\n}"


def _write_text(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _csv_text(meta: dict, columns: list[str], rows: np.ndarray) -> str:
    lines = [f"# holonoise v{__version__}"]
    for key, val in meta.items():
        if isinstance(val, float):
            val = _fmt(val)
        lines.append(f"# {key} = {val}")
    lines.append("# columns: " + ",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _read_csv(path: Path) -> tuple[dict, np.ndarray]:
    meta: dict[str, str] = {}
    try:
        with path.open() as handle:
            for line in handle:
                if not line.startswith("#"):
                    break
                body = line[1:].strip()
                if "=" in body:
                    key, _, val = body.partition("=")
                    meta[key.strip()] = val.strip()
        data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    except OSError:
        raise
    except ValueError as exc:
        raise DomainError(f"malformed CSV {path}: {exc}") from exc
    return meta, data


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _resolve_outdir(flag_value: str | None) -> Path:
    if flag_value is not None:
        out = Path(flag_value)
    elif os.environ.get(ENV_OUTPUT_DIR):
        out = Path(os.environ[ENV_OUTPUT_DIR])
    else:
        out = Path.cwd()
    out.mkdir(parents=True, exist_ok=True)
    return out


def load_config(path: Path) -> ExperimentConfig:
    """Parse a JSON config file; unknown fields and bad JSON are rejected."""
    try:
        text = path.read_text()
    except OSError:
        raise
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(
            f"malformed JSON in {path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return ExperimentConfig.from_dict(raw)


def _report_dict(report) -> dict:
    return {
        "band_hz": [report.band[0], report.band[1]],
        "snr": report.snr,
        "n_avg": report.n_avg,
        "integration_time_s": report.integration_time,
        "sigma_level": report.sigma_level,
        "null_pvalue": report.null_pvalue,
    }


def _write_manifest(path: Path, command: str, config: dict, outputs: dict[str, str]) -> None:
    manifest = {
        "command": command,
        "config": config,
        "constants": CONSTANTS.as_dict(),
        "version": __version__,
        "prng": PRNG_IDENTIFIER,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "outputs": outputs,
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _spectra_csv(est: SpectralEstimate) -> str:
    rows = np.column_stack(
        [est.freqs, est.psd1, est.psd2, est.csd.real, est.csd.imag, est.coherence]
    )
    meta = {
        "sample_rate_hz": est.sample_rate,
        "segment_length": est.segment_length,
        "overlap": est.overlap,
        "window": est.window,
        "n_avg": est.n_avg,
    }
    return _csv_text(
        meta,
        ["freq_hz", "psd1_m2_per_hz", "psd2_m2_per_hz", "csd_re_m2_per_hz",
         "csd_im_m2_per_hz", "coherence"],
        rows,
    )


def _estimate_from_csv(path: Path) -> SpectralEstimate:
    meta, data = _read_csv(path)
    required = {"sample_rate_hz", "segment_length", "overlap", "window", "n_avg"}
    missing = sorted(required - set(meta))
    if missing:
        raise DomainError(f"spectra file {path} lacks header fields: {', '.join(missing)}")
    if data.shape[1] != 6:
        raise DomainError(f"spectra file {path} must have 6 columns, found {data.shape[1]}")
    return SpectralEstimate(
        freqs=data[:, 0],
        psd1=data[:, 1],
        psd2=data[:, 2],
        csd=data[:, 3] + 1j * data[:, 4],
        coherence=data[:, 5],
        n_avg=int(meta["n_avg"]),
        segment_length=int(meta["segment_length"]),
        overlap=float(meta["overlap"]),
        window=meta["window"],
        sample_rate=float(meta["sample_rate_hz"]),
    )


def cmd_constants(args) -> int:
    _write_text(
        Path(args.output) if args.output else None,
        _json_block(CONSTANTS.as_dict()) + "\n",
    )
    return 0


def cmd_predict(args) -> int:
    model = HolographicModel.from_baseline(args.arm_length)
    lags = np.linspace(0.0, 2.0 * model.tau_c, 256)
    freqs = np.linspace(0.0, 10.0 / model.tau_c, 512)
    acf = autocorrelation(model, lags)
    psd = psd_model(model, freqs)
    lines = [
        f"# holonoise v{__version__}",
        f"# arm_length_m = {_fmt(model.L)}",
        f"# sigma2_m2 = {_fmt(model.sigma2)}",
        f"# tau_c_s = {_fmt(model.tau_c)}",
        f"# psd_zero_m2_per_hz = {_fmt(2.0 * model.sigma2 * model.tau_c)}",
        "# psd convention: one-sided, integrates to sigma2_m2",
        "# columns: quantity,x,value",
    ]
    for lag, val in zip(lags, acf):
        lines.append(f"acf,{_fmt(lag)},{_fmt(val)}")
    for freq, val in zip(freqs, psd):
        lines.append(f"psd,{_fmt(freq)},{_fmt(val)}")
    _write_text(Path(args.output) if args.output else None, "\n".join(lines) + "\n")
    return 0


def cmd_info(args) -> int:
    budget = info_budget(args.length)
    _write_text(
        Path(args.output) if args.output else None,
        _json_block(
            {
                "length_m": budget.L,
                "pixel_size_m": budget.pixel_size,
                "refresh_s": budget.refresh,
                "dof_radial": budget.dof_radial,
                "dof_angular": budget.dof_angular,
                "total_info": budget.total_info,
                "field_theory_info": budget.field_theory_info,
                "ratio": budget.ratio,
            }
        )
        + "\n",
    )
    return 0


def cmd_slits(args) -> int:
    wavelength = args.wavelength if args.wavelength is not None else CONSTANTS.l_P
    slit_width = args.slit_width if args.slit_width is not None else wavelength
    setup = SlitSetup(
        separation=args.separation,
        slit_width=slit_width,
        screen_distance=args.screen_distance,
        wavelength=wavelength,
        n_angles=args.n_angles,
    )
    out = Path(args.output) if args.output else None
    if args.sweep:
        seps, metrics = separation_sweep(setup)
        bound = np.full_like(seps, transverse_uncertainty(setup.screen_distance))
        rows = np.column_stack([seps, metrics, bound])
        text = _csv_text(
            {
                "screen_distance_m": setup.screen_distance,
                "slit_width_m": setup.slit_width,
                "wavelength_m": setup.wavelength,
            },
            ["separation_m", "distance_metric", "bound_m"],
            rows,
        )
    else:
        if args.blurred:
            pattern = information_blurred_pattern(setup)
        else:
            pattern = fraunhofer_pattern(setup)
        rows = np.column_stack([setup.angles(), pattern])
        text = _csv_text(
            {
                "separation_m": setup.separation,
                "slit_width_m": setup.slit_width,
                "screen_distance_m": setup.screen_distance,
                "wavelength_m": setup.wavelength,
                "blurred": str(bool(args.blurred)).lower(),
            },
            ["angle_rad", "intensity"],
            rows,
        )
    _write_text(out, text)
    return 0


def _timeseries_csv(pair: TimeSeriesPair, config: ExperimentConfig) -> str:
    times = np.arange(pair.n_samples) / pair.sample_rate
    rows = np.column_stack([times, pair.ch1, pair.ch2, pair.common])
    meta = {
        "sample_rate_hz": pair.sample_rate,
        "segment_length": config.segment_length,
        "overlap": config.overlap,
    }
    return _csv_text(meta, ["time_s", "ch1_m", "ch2_m", "common_m"], rows)


def cmd_simulate(args) -> int:
    config = load_config(Path(args.config))
    outdir = _resolve_outdir(args.output_dir)
    pair = synthesize_pair(config)
    estimate = welch_csd(pair, config.segment_length, config.overlap)
    model = config.model()
    band = _parse_band(args.band) if args.band else (0.0, 1.0 / model.tau_c)
    prediction = predicted_snr(
        model,
        config.shot_asd,
        config.sample_rate,
        config.segment_length,
        estimate.n_avg,
        band,
        config.holo_scale,
    )
    report = null_significance(estimate, band, predicted=prediction)

    outputs: dict[str, str] = {}
    spectra_path = outdir / "spectra.csv"
    spectra_path.write_text(_spectra_csv(estimate))
    outputs["spectra.csv"] = _sha256(spectra_path)
    report_path = outdir / "report.json"
    report_path.write_text(json.dumps(_report_dict(report), indent=2) + "\n")
    outputs["report.json"] = _sha256(report_path)
    if args.dump_timeseries:
        ts_path = outdir / "timeseries.csv"
        ts_path.write_text(_timeseries_csv(pair, config))
        outputs["timeseries.csv"] = _sha256(ts_path)
    _write_manifest(outdir / "manifest.json", "simulate", config.as_dict(), outputs)

    print(f"wrote {', '.join(sorted(outputs))} to {outdir}")
    print(
        f"band {_fmt(band[0])}..{_fmt(band[1])} Hz  n_avg {estimate.n_avg}  "
        f"predicted snr {report.snr:.3f}  sigma {report.sigma_level:.3f}  "
        f"p {report.null_pvalue:.3e}"
    )
    return 0


def cmd_analyze(args) -> int:
    meta, data = _read_csv(Path(args.timeseries))
    if data.shape[1] not in (3, 4):
        raise DomainError(
            f"timeseries file must have columns time,ch1,ch2[,common]; found {data.shape[1]}"
        )
    if args.sample_rate is not None:
        fs = args.sample_rate
    elif "sample_rate_hz" in meta:
        fs = float(meta["sample_rate_hz"])
    else:
        times = data[:, 0]
        fs = 1.0 / float(times[1] - times[0])
    segment_length = args.segment_length or int(meta.get("segment_length", 8192))
    overlap = args.overlap if args.overlap is not None else float(meta.get("overlap", 0.5))
    common = data[:, 3] if data.shape[1] == 4 else np.zeros(len(data))
    pair = TimeSeriesPair(sample_rate=fs, ch1=data[:, 1], ch2=data[:, 2], common=common)
    estimate = welch_csd(pair, segment_length, overlap)
    _write_text(Path(args.output) if args.output else None, _spectra_csv(estimate))
    return 0


def cmd_detect(args) -> int:
    estimate = _estimate_from_csv(Path(args.estimate))
    report = null_significance(estimate, _parse_band(args.band))
    _write_text(
        Path(args.output) if args.output else None,
        json.dumps(_report_dict(report), indent=2) + "\n",
    )
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="holonoise",
        description="Planck-bandwidth noise model and twin-interferometer simulation",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("constants", help="print the constant set as JSON")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("predict", help="model autocovariance and PSD curves as CSV")
    p.add_argument("--arm-length", type=float, required=True, help="baseline in m")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("info", help="degree-of-freedom budget for a region as JSON")
    p.add_argument("--length", type=float, required=True, help="region size in m")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("slits", help="two-slit patterns and distinguishability sweeps")
    p.add_argument("--screen-distance", type=float, required=True, help="m")
    p.add_argument("--separation", type=float, default=0.0, help="slit separation, m")
    p.add_argument("--slit-width", type=float, default=None, help="m (default: wavelength)")
    p.add_argument("--wavelength", type=float, default=None, help="m (default: c t_P)")
    p.add_argument("--n-angles", type=int, default=4096)
    p.add_argument("--blurred", action="store_true", help="apply the information blur")
    p.add_argument("--sweep", action="store_true", help="emit the separation sweep instead")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_slits)

    p = sub.add_parser("simulate", help="synthesize a pair, estimate spectra, detect")
    p.add_argument("--config", required=True, help="JSON experiment configuration")
    p.add_argument("--band", help="detection band LO:HI in Hz (default 0:1/tau_c)")
    p.add_argument("--output-dir", help=f"output directory (or ${ENV_OUTPUT_DIR})")
    p.add_argument(
        "--dump-timeseries", action="store_true", help="also write timeseries.csv"
    )
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="Welch spectra from a time-series CSV")
    p.add_argument("--timeseries", required=True, help="CSV from simulate --dump-timeseries")
    p.add_argument("--segment-length", type=int, default=None)
    p.add_argument("--overlap", type=float, default=None)
    p.add_argument("--sample-rate", type=float, default=None, help="Hz override")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("detect", help="detection report from a spectra CSV")
    p.add_argument("--estimate", required=True, help="spectra CSV from analyze/simulate")
    p.add_argument("--band", required=True, help="band LO:HI in Hz")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_detect)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(exc.usage)
        sys.stderr.write(f"error: {exc}\n")
        return 64
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(exc.usage)
        sys.stderr.write(f"error: {exc}\n")
        return 64
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except BrokenPipeError:
        # Reader went away (e.g. piped into head); not a failure of ours.
        try:
            sys.stdout.close()
        except OSError:
            pass
        return 0
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
