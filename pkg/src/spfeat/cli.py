"""Batch extraction tool: WAV files in, feature matrices out.

Usage:

    extract --feature mfcc --input clips/ --output-dir feats --format csv

One output file per input, named after the input stem.  A corrupt file
never aborts the batch; failures go to stderr and the final stdout line
is the machine-readable summary ``OK=<n> FAIL=<m>``.
"""

from __future__ import annotations

import argparse
import struct
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .audio_io import read_wav
from .errors import (
    CliError,
    InvalidValueError,
    MissingInputError,
    OutputCollisionError,
    OutputDirUnwritableError,
    SpfeatError,
    UnknownKeyError,
)
from .features import FeatureConfig, FeatureMatrix, extract_derivative, lmfe, mfcc, mfe

FEATURES = ("mfcc", "mfe", "lmfe")
POSTPROCESS = ("none", "cmvn", "cmvn_var", "cmvnw", "cmvnw_var")
FORMATS = ("csv", "spfe")
WINDOWS = ("rectangular", "hamming", "hanning")

SPFE_MAGIC = b"SPFE"
SPFE_VERSION = 1


@dataclass
class JobSpec:
    inputs: list[Path]
    feature: str
    config: FeatureConfig
    postprocess: str
    win_size: int
    derivatives: bool
    output_dir: Path
    format: str


@dataclass
class Summary:
    files_ok: int
    files_failed: int


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "on", "yes"):
        return True
    if lowered in ("false", "0", "off", "no"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _choice(options):
    def parse(text):
        if text not in options:
            raise ValueError(f"must be one of {', '.join(options)}")
        return text

    return parse


# dest -> value parser, used for both flags and config-file values
_OPTION_PARSERS = {
    "feature": _choice(FEATURES),
    "input": str,
    "output_dir": str,
    "format": _choice(FORMATS),
    "frame_length": float,
    "frame_stride": float,
    "fft_length": int,
    "num_filters": int,
    "num_cepstral": int,
    "low_freq": float,
    "high_freq": float,
    "window": _choice(WINDOWS),
    "pre_emphasis": float,
    "dc_elimination": _parse_bool,
    "zero_padding": _parse_bool,
    "postprocess": _choice(POSTPROCESS),
    "win_size": int,
    "derivatives": _parse_bool,
}

_DEFAULTS = {
    "feature": None,
    "input": [],
    "output_dir": ".",
    "format": "csv",
    "frame_length": 0.020,
    "frame_stride": 0.010,
    "fft_length": 512,
    "num_filters": 40,
    "num_cepstral": 13,
    "low_freq": 0.0,
    "high_freq": None,
    "window": "rectangular",
    "pre_emphasis": 0.97,
    "dc_elimination": False,
    "zero_padding": True,
    "postprocess": "none",
    "win_size": 301,
    "derivatives": False,
}


class _Parser(argparse.ArgumentParser):
    # raise instead of calling sys.exit so the CLI owns its exit codes
    def error(self, message):
        raise InvalidValueError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="extract", description="Batch speech feature extraction")
    parser.add_argument("--feature", choices=FEATURES)
    parser.add_argument("--input", nargs="+", default=None, metavar="PATH")
    parser.add_argument("--output-dir", dest="output_dir")
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--frame-length", dest="frame_length", type=float)
    parser.add_argument("--frame-stride", dest="frame_stride", type=float)
    parser.add_argument("--fft-length", dest="fft_length", type=int)
    parser.add_argument("--num-filters", dest="num_filters", type=int)
    parser.add_argument("--num-cepstral", dest="num_cepstral", type=int)
    parser.add_argument("--low-freq", dest="low_freq", type=float)
    parser.add_argument("--high-freq", dest="high_freq", type=float)
    parser.add_argument("--window", choices=WINDOWS)
    parser.add_argument("--pre-emphasis", dest="pre_emphasis", type=float)
    parser.add_argument(
        "--dc-elimination", dest="dc_elimination", action="store_const", const=True
    )
    parser.add_argument(
        "--no-zero-padding", dest="zero_padding", action="store_const", const=False
    )
    parser.add_argument("--postprocess", choices=POSTPROCESS)
    parser.add_argument("--win-size", dest="win_size", type=int)
    parser.add_argument(
        "--derivatives", dest="derivatives", action="store_const", const=True
    )
    parser.add_argument("--config", default=None, metavar="FILE")
    return parser


def _read_config_file(path) -> dict:
    """Line-oriented ``key = value`` file; '#' starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidValueError(f"cannot read config file {path}: {exc}") from exc

    values = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        dest = key.strip().replace("-", "_")
        if dest not in _OPTION_PARSERS:
            raise UnknownKeyError(f"{path}:{lineno}: unknown key {key.strip()!r}")
        try:
            parsed = _OPTION_PARSERS[dest](value.strip())
        except ValueError as exc:
            raise InvalidValueError(f"{path}:{lineno}: {key.strip()}: {exc}") from exc
        if dest == "input":
            parsed = value.split()
        values[dest] = parsed
    return values


def parse_config(argv) -> JobSpec:
    """Resolve flags over config-file values over defaults into a JobSpec."""
    args = _build_parser().parse_args(argv)

    merged = dict(_DEFAULTS)
    if args.config is not None:
        merged.update(_read_config_file(args.config))
    for dest in _DEFAULTS:
        cli_value = getattr(args, dest)
        if cli_value is not None:
            merged[dest] = cli_value

    if merged["feature"] is None:
        raise InvalidValueError("--feature is required")
    if not merged["input"]:
        raise MissingInputError("no input files given")
    if merged["postprocess"] in ("cmvnw", "cmvnw_var"):
        if merged["win_size"] < 3 or merged["win_size"] % 2 == 0:
            raise InvalidValueError(
                f"--win-size must be odd and >= 3, got {merged['win_size']}"
            )
    if merged["num_cepstral"] > merged["num_filters"]:
        raise InvalidValueError(
            f"--num-cepstral ({merged['num_cepstral']}) exceeds "
            f"--num-filters ({merged['num_filters']})"
        )

    config = FeatureConfig(
        alpha=merged["pre_emphasis"],
        frame_length_s=merged["frame_length"],
        frame_stride_s=merged["frame_stride"],
        window=merged["window"],
        fft_length=merged["fft_length"],
        num_filters=merged["num_filters"],
        num_cepstral=merged["num_cepstral"],
        low_freq=merged["low_freq"],
        high_freq=merged["high_freq"],
        dc_elimination=merged["dc_elimination"],
        zero_padding=merged["zero_padding"],
    )
    return JobSpec(
        inputs=[Path(p) for p in merged["input"]],
        feature=merged["feature"],
        config=config,
        postprocess=merged["postprocess"],
        win_size=merged["win_size"],
        derivatives=merged["derivatives"],
        output_dir=Path(merged["output_dir"]),
        format=merged["format"],
    )


def write_csv(matrix, path) -> None:
    """One line per frame, round-trip-shortest decimals, no header."""
    data = matrix.data if isinstance(matrix, FeatureMatrix) else np.asarray(matrix)
    with open(path, "w", newline="") as fh:
        for row in data:
            fh.write(",".join(repr(float(v)) for v in row))
            fh.write("\n")


def write_spfe(matrix, path) -> None:
    """Binary layout: 'SPFE', u16 version, u16 reserved, u32 rows, u32 cols,
    then row-major little-endian float64 values."""
    data = matrix.data if isinstance(matrix, FeatureMatrix) else np.asarray(matrix)
    rows, cols = data.shape
    header = struct.pack("<4sHHII", SPFE_MAGIC, SPFE_VERSION, 0, rows, cols)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(data, dtype="<f8").tobytes())


def _expand_inputs(inputs: list[Path]) -> list[Path]:
    if len(inputs) == 1 and inputs[0].is_dir():
        return sorted(
            (p for p in inputs[0].iterdir() if p.suffix.lower() == ".wav"),
            key=lambda p: p.name,
        )
    return inputs


_FEATURE_FNS = {"mfcc": mfcc, "mfe": mfe, "lmfe": lmfe}


def _process_file(wav_path: Path, spec: JobSpec, out_path: Path) -> None:
    signal = read_wav(wav_path)
    features = _FEATURE_FNS[spec.feature](signal, spec.config)
    if spec.derivatives:
        features = extract_derivative(features)
    if spec.postprocess != "none":
        from .postprocess import cmvn, cmvnw

        if spec.postprocess == "cmvn":
            features = cmvn(features)
        elif spec.postprocess == "cmvn_var":
            features = cmvn(features, variance_normalization=True)
        elif spec.postprocess == "cmvnw":
            features = cmvnw(features, win_size=spec.win_size)
        else:
            features = cmvnw(features, win_size=spec.win_size, variance_normalization=True)
    if spec.format == "csv":
        write_csv(features, out_path)
    else:
        write_spfe(features, out_path)


def run_extract(spec: JobSpec, stderr=None) -> Summary:
    """Process every input file, isolating per-file failures."""
    if stderr is None:
        stderr = sys.stderr
    files = _expand_inputs(spec.inputs)
    if not files:
        raise MissingInputError("no .wav files found in input")

    stems = {}
    for path in files:
        if path.stem in stems:
            raise OutputCollisionError(
                f"inputs {stems[path.stem]} and {path} share output stem {path.stem!r}"
            )
        stems[path.stem] = path

    try:
        spec.output_dir.mkdir(parents=True, exist_ok=True)
        probe = spec.output_dir / ".write-probe"
        probe.touch()
        probe.unlink()
    except OSError as exc:
        raise OutputDirUnwritableError(f"{spec.output_dir}: {exc}") from exc

    ok = failed = 0
    for path in files:
        out_path = spec.output_dir / f"{path.stem}.{spec.format}"
        try:
            _process_file(path, spec, out_path)
            ok += 1
        except (SpfeatError, OSError) as exc:
            print(f"FAIL {path}: {exc}", file=stderr)
            failed += 1
    print(f"OK={ok} FAIL={failed}")
    return Summary(files_ok=ok, files_failed=failed)


def main(argv=None) -> int:
    try:
        spec = parse_config(sys.argv[1:] if argv is None else argv)
        summary = run_extract(spec)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if summary.files_failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
