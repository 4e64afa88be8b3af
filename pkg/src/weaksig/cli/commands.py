"""CLI commands for weaksig."""

import csv
import logging
import os
import sys
import time
from contextlib import contextmanager
from dataclasses import asdict
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import typer

from ..config import Values, load_config, resolve_detect, resolve_pipeline_config, resolve_settings
from ..core import BatchProcessor, linear_fit_r2, run_experiment
from ..core import cumulant
from ..core.bsr import build_dataset
from ..core.detection import detect
from ..core.experiments import TIMING_GRID, get_scenario
from ..core.generation import add_noise, generate, noise_for_snr
from ..core.metrics import aligned_snr_db, gain_coefficient, snr_db
from ..core.pipeline import group_delay, run_stages
from ..core.stft import stft
from ..exceptions import ConfigError, UnknownScenarioError, WeakSigError
from ..handlers.error_handler import error_handler
from ..handlers.logging_handler import logging_handler
from ..models import (
    BsrSystem,
    ClipMode,
    EvalReport,
    ModulationSpec,
    NoiseSpec,
    PipelineConfig,
    RunManifest,
    Scheme,
    Settings,
    Signal,
)
from ..plugins import get_scorer
from ..services import (
    DatasetStore,
    ManifestStore,
    ReportStore,
    read_signal,
    write_magnitudes,
    write_signal,
    write_taps,
)

logger = logging.getLogger(__name__)

DEFAULT_BITS = "10110010"

# Shared options
CONFIG_OPTION = typer.Option(None, "--config", "-c", help="Path to a TOML configuration file")
LOG_LEVEL_OPTION = typer.Option(
    None, "--log-level", "-l", help="Set log level (DEBUG, INFO, WARNING, ERROR)"
)
LOG_FILE_OPTION = typer.Option(None, "--log-file", help="Write logs to specified file")
QUIET_OPTION = typer.Option(False, "--quiet", "-q", help="Suppress non-error output")
PLAIN_OPTION = typer.Option(False, "--plain", help="Disable colored output")
MAX_WORKERS_OPTION = typer.Option(None, "--max-workers", help="Parallel workers")
MANIFEST_OPTION = typer.Option(
    None, "--manifest", help="Manifest path (default: next to the first output)"
)
ERROR_LOG_OPTION = typer.Option(
    None, "--error-log", help="Write detailed error logs to specified file"
)
RATE_OPTION = typer.Option(8000.0, "--rate", help="Sample rate in Hz (also used for CSV inputs)")


def get_version() -> str:
    # Import here to avoid circular imports
    from weaksig import __version__

    return __version__


def version_callback(value: bool) -> None:
    """Handle --version flag."""
    if value:
        typer.echo(f"weaksig {get_version()}")
        raise typer.Exit()


def _setup(
    config: Optional[str],
    log_level: Optional[str],
    log_file: Optional[str],
    quiet: bool,
    plain: bool,
    max_workers: Optional[int],
) -> Tuple[Values, Settings]:
    file_values = load_config(config)
    settings = resolve_settings(
        file_values,
        {
            "log_level": log_level,
            "log_file": log_file,
            "max_workers": max_workers,
            "quiet": quiet or None,
            "plain": plain or None,
        },
    )
    logging_handler.setup_logging(
        settings.log_level, settings.log_file, settings.quiet, settings.plain
    )
    return file_values, settings


@contextmanager
def _cli_errors(
    context: str, quiet: bool = False, error_log: Optional[str] = None
) -> Iterator[None]:
    """Map exceptions onto the exit-code contract: 2 usage, 1 runtime or I/O."""
    try:
        yield
    except (typer.Exit, typer.BadParameter):
        raise
    except KeyboardInterrupt:
        logger.info("Operation cancelled by user")
        raise typer.Exit(130)
    except Exception as e:
        code = 2 if isinstance(e, (ConfigError, UnknownScenarioError)) else 1
        error_handler.handle_error(e, context=context, fatal=False)
        if not quiet:
            typer.echo(f"Error: {e}", err=True)
        if error_log:
            error_handler.write_detailed_error_log(error_log)
        raise typer.Exit(code)


def _replay_argv(ctx: typer.Context) -> List[str]:
    """Canonical argv reproducing this invocation."""
    argv = [ctx.info_name or ""]
    for param in ctx.command.params:
        value = ctx.params.get(param.name or "")
        if value is None or getattr(param, "is_eager", False):
            continue
        if isinstance(value, (list, tuple)):
            values = [_flag_text(v) for v in value]
        else:
            values = [_flag_text(value)]
        if param.param_type_name == "argument":
            argv.extend(values)
        elif getattr(param, "is_flag", False):
            secondary = getattr(param, "secondary_opts", [])
            if value:
                argv.append(param.opts[0])
            elif secondary:
                argv.append(secondary[0])
        else:
            for text in values:
                argv.extend([param.opts[0], text])
    return argv


def _flag_text(value: Any) -> str:
    return str(getattr(value, "value", value))


def _write_manifest(
    ctx: typer.Context,
    path: Optional[str],
    config: Dict[str, Any],
    inputs: Sequence[str],
    outputs: Sequence[str],
    seed: Optional[int] = None,
) -> str:
    if path is None:
        stem = outputs[0] if outputs else f"weaksig-{ctx.info_name}"
        path = f"{stem}.manifest.json"
    manifest = RunManifest(
        subcommand=ctx.info_name or "",
        argv=_replay_argv(ctx),
        config=config,
        inputs=list(inputs),
        outputs=list(outputs),
        seed=seed,
        version=get_version(),
    )
    ManifestStore(path).save(manifest)
    return path


def _parse_list(text: str, convert, name: str) -> List[Any]:
    try:
        values = [convert(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise typer.BadParameter(f"{name} must be a comma-separated list, got {text!r}")
    if not values:
        raise typer.BadParameter(f"{name} must not be empty")
    return values


def _parse_bits(text: str) -> Tuple[int, ...]:
    if not text or set(text) - {"0", "1"}:
        raise typer.BadParameter(f"--bits must be a string of 0 and 1, got {text!r}")
    return tuple(int(b) for b in text)


def generate_command(
    ctx: typer.Context,
    out: str = typer.Option(..., "--out", "-o", help="Output signal file (.sgnl or .csv)"),
    scheme: Scheme = typer.Option(Scheme.SINE, "--scheme", help="Waveform: sine, bpsk or bfsk"),
    carrier: float = typer.Option(1000.0, "--carrier", help="Carrier frequency in Hz"),
    rate: float = RATE_OPTION,
    dur: float = typer.Option(1.0, "--dur", help="Duration in seconds"),
    symbol_rate: float = typer.Option(100.0, "--symbol-rate", help="Symbols per second"),
    bits: str = typer.Option(DEFAULT_BITS, "--bits", help="Payload bits, repeated cyclically"),
    amplitude: float = typer.Option(1.0, "--amplitude", help="Peak amplitude"),
    snr: Optional[float] = typer.Option(
        None, "--snr", help="Channel SNR in dB (sets the Gaussian sigma)"
    ),
    noise_sigma: float = typer.Option(0.0, "--noise-sigma", help="Gaussian noise sigma"),
    impulse_prob: float = typer.Option(0.0, "--impulse-prob", help="Impulse probability"),
    impulse_sigma: float = typer.Option(0.0, "--impulse-sigma", help="Impulse sigma"),
    seed: int = typer.Option(0, "--seed", help="Noise seed"),
    clean_out: Optional[str] = typer.Option(
        None, "--clean-out", help="Also write the noise-free waveform"
    ),
    manifest: Optional[str] = MANIFEST_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    log_file: Optional[str] = LOG_FILE_OPTION,
    quiet: bool = QUIET_OPTION,
    plain: bool = PLAIN_OPTION,
):
    """
    Synthesize a test waveform, optionally through the impulsive noise channel.

    Examples:

      weaksig generate --scheme sine --carrier 1000 --rate 8000 --dur 0.1 --out s.sgnl

      weaksig generate --dur 7.5 --snr 1.1 --impulse-prob 0.005 --impulse-sigma 4 \\
          --clean-out clean.sgnl --out noisy.sgnl
    """
    with _cli_errors("generate", quiet):
        _setup(config, log_level, log_file, quiet, plain, None)
        payload = _parse_bits(bits) if scheme is not Scheme.SINE else ()
        mod = ModulationSpec(scheme, carrier, symbol_rate, payload, amplitude)
        clean = generate(mod, rate, dur)
        if snr is not None:
            noise = noise_for_snr(clean, snr, impulse_prob, impulse_sigma, seed)
        else:
            noise = NoiseSpec(noise_sigma, impulse_prob, impulse_sigma, seed)
        write_signal(out, add_noise(clean, noise))
        outputs = [out]
        if clean_out:
            write_signal(clean_out, clean)
            outputs.append(clean_out)
        _write_manifest(
            ctx,
            manifest,
            {"modulation": mod.to_dict(), "noise": asdict(noise), "sample_rate": rate},
            [],
            outputs,
            seed,
        )
        if not quiet:
            typer.echo(f"Wrote {len(clean)} samples to {out}")


def _pipeline_overrides(
    inp_tau0: Optional[float],
    inp_mode: Optional[ClipMode],
    nlm_patch: Optional[int],
    nlm_search: Optional[int],
    nlm_h: Optional[float],
    nlm_kernel_sigma: Optional[float],
    nlm_full_search: bool,
    fir_lag: Optional[int],
    no_inp: bool,
    no_nlm: bool,
    no_fir: bool,
    bsr: bool,
    bsr_a: Optional[float],
    bsr_b: Optional[float],
    bsr_dt: Optional[float],
) -> Dict[str, Dict[str, Any]]:
    return {
        "inp": {"tau0": inp_tau0, "mode": inp_mode.value if inp_mode else None},
        "nlm": {
            "patch_half_width": nlm_patch,
            "search_half_width": nlm_search,
            "h": nlm_h,
            "kernel_sigma": nlm_kernel_sigma,
            "full_search": nlm_full_search or None,
        },
        "fir": {"lag": fir_lag},
        "bsr": {"a": bsr_a, "b": bsr_b, "dt": bsr_dt},
        "stages": {
            "inp": False if no_inp else None,
            "nlm": False if no_nlm else None,
            "fir": False if no_fir else None,
            "bsr": True if bsr else None,
        },
    }


def _enhanced_path(path: str, out_dir: Optional[str]) -> str:
    stem, ext = os.path.splitext(os.path.basename(path))
    return os.path.join(out_dir or os.path.dirname(path), f"{stem}.enhanced{ext or '.sgnl'}")


def enhance_command(
    ctx: typer.Context,
    inputs: List[str] = typer.Argument(..., help="Signal files to enhance", metavar="INPUT..."),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="Output file (single input)"),
    out_dir: Optional[str] = typer.Option(
        None, "--out-dir", help="Directory for outputs (default: next to each input)"
    ),
    ref: Optional[str] = typer.Option(
        None, "--ref", help="Clean reference; output SNR is scored after delay and gain alignment"
    ),
    report: str = typer.Option("report.csv", "--report", help="CSV report appended with --ref"),
    magnitudes: Optional[str] = typer.Option(
        None, "--magnitudes", help="Write the STFT magnitudes of the output (single input)"
    ),
    export_taps: Optional[str] = typer.Option(
        None, "--export-taps", help="Write the cumulant filter taps (single input)"
    ),
    rate: float = RATE_OPTION,
    inp_tau0: Optional[float] = typer.Option(None, "--inp-tau0", help="INP threshold factor"),
    inp_mode: Optional[ClipMode] = typer.Option(None, "--inp-mode", help="INP clipping law"),
    nlm_patch: Optional[int] = typer.Option(None, "--nlm-patch", help="NLM patch half-width P"),
    nlm_search: Optional[int] = typer.Option(None, "--nlm-search", help="NLM search half-width"),
    nlm_h: Optional[float] = typer.Option(None, "--nlm-h", help="NLM smoothing h (default: auto)"),
    nlm_kernel_sigma: Optional[float] = typer.Option(
        None, "--nlm-kernel-sigma", help="Gaussian patch kernel sigma (0 = uniform)"
    ),
    nlm_full_search: bool = typer.Option(
        False, "--nlm-full-search", help="Compare every sample with every other"
    ),
    fir_lag: Optional[int] = typer.Option(None, "--fir-lag", help="Cumulant filter max lag L"),
    no_inp: bool = typer.Option(False, "--no-inp", help="Disable the INP stage"),
    no_nlm: bool = typer.Option(False, "--no-nlm", help="Disable the NLM stage"),
    no_fir: bool = typer.Option(False, "--no-fir", help="Disable the cumulant FIR stage"),
    bsr: bool = typer.Option(False, "--bsr", help="Enable the bistable stage"),
    bsr_a: Optional[float] = typer.Option(None, "--bsr-a", help="Double-well parameter a"),
    bsr_b: Optional[float] = typer.Option(None, "--bsr-b", help="Double-well parameter b"),
    bsr_dt: Optional[float] = typer.Option(None, "--bsr-dt", help="Euler step"),
    manifest: Optional[str] = MANIFEST_OPTION,
    error_log: Optional[str] = ERROR_LOG_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    max_workers: Optional[int] = MAX_WORKERS_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    log_file: Optional[str] = LOG_FILE_OPTION,
    quiet: bool = QUIET_OPTION,
    plain: bool = PLAIN_OPTION,
):
    """
    Run the enhancement chain (INP, optional BSR, NLM, cumulant FIR) on signal files.

    Settings come from flags, then --config, then WEAKSIG_* variables, then defaults.

    Examples:

      weaksig enhance noisy.sgnl --out clean_est.sgnl --ref clean.sgnl

      weaksig enhance a.sgnl b.sgnl --out-dir enhanced/ --max-workers 4 --no-nlm
    """
    with _cli_errors("enhance", quiet, error_log):
        file_values, settings = _setup(config, log_level, log_file, quiet, plain, max_workers)
        overrides = _pipeline_overrides(
            inp_tau0=inp_tau0,
            inp_mode=inp_mode,
            nlm_patch=nlm_patch,
            nlm_search=nlm_search,
            nlm_h=nlm_h,
            nlm_kernel_sigma=nlm_kernel_sigma,
            nlm_full_search=nlm_full_search,
            fir_lag=fir_lag,
            no_inp=no_inp,
            no_nlm=no_nlm,
            no_fir=no_fir,
            bsr=bsr,
            bsr_a=bsr_a,
            bsr_b=bsr_b,
            bsr_dt=bsr_dt,
        )
        cfg = resolve_pipeline_config(file_values, overrides)
        single = len(inputs) == 1
        if not single and (out or magnitudes or export_taps):
            raise typer.BadParameter("--out, --magnitudes and --export-taps need a single input")
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
        reference = read_signal(ref, rate) if ref else None
        delay = group_delay(cfg)
        # NLM threads only help when files are not already processed in parallel
        nlm_workers = settings.max_workers if single else 1

        def enhance_one(path: str) -> Tuple[str, Optional[EvalReport]]:
            y = read_signal(path, rate)
            start = time.perf_counter()
            fir_input: Optional[Signal] = None
            result = y
            for stage, stage_input, result in run_stages(y, cfg, nlm_workers):
                if stage == "fir":
                    fir_input = stage_input
            elapsed = time.perf_counter() - start
            target = out if single and out else _enhanced_path(path, out_dir)
            write_signal(target, result)
            if magnitudes:
                write_magnitudes(magnitudes, stft(result))
            if export_taps:
                if fir_input is None:
                    raise ConfigError("--export-taps needs the fir stage enabled")
                write_taps(export_taps, cumulant.design(fir_input, cfg.fir_lag))
            row = None
            if reference is not None:
                row = EvalReport(
                    scenario="enhance",
                    seed=0,
                    param=os.path.basename(path),
                    snr_in_db=snr_db(reference, y),
                    snr_out_db=aligned_snr_db(reference, result, delay),
                    gain_alpha=gain_coefficient(reference, result, delay),
                    wall_time_s=elapsed,
                    config=cfg.to_dict(),
                )
            return target, row

        if single:
            results = [enhance_one(inputs[0])]
        else:
            batch = BatchProcessor(settings.max_workers).process(
                inputs,
                enhance_one,
                label=os.path.basename,
                quiet=settings.quiet,
                desc="Enhancing",
                error_callback=error_handler.handle_item_error,
            )
            results = batch.successful()
            if batch.has_errors():
                for _, name, error in sorted(batch.errors, key=lambda entry: entry[0]):
                    typer.echo(f"Error: {name}: {error}", err=True)
        outputs = [target for target, _ in results]
        rows = [row for _, row in results if row is not None]
        if rows:
            ReportStore(report).append(rows)
            outputs.append(report)
        outputs.extend(p for p in (magnitudes, export_taps) if p)
        _write_manifest(
            ctx,
            manifest,
            cfg.to_dict(),
            list(inputs) + ([ref] if ref else []),
            outputs,
        )
        if not settings.quiet:
            typer.echo(f"Enhanced {len(results)} of {len(inputs)} file(s)")
            for row in rows:
                typer.echo(
                    f"  {row.param}: SNR {row.snr_in_db:.2f} dB -> {row.snr_out_db:.2f} dB, "
                    f"alpha {row.gain_alpha:.3f}"
                )
        if len(results) < len(inputs):
            if error_log:
                error_handler.write_detailed_error_log(error_log)
            raise typer.Exit(1)


DETECT_COLUMNS = ("input", "p_signal", "p_noise", "logit_signal", "logit_noise", "is_signal")


def detect_command(
    ctx: typer.Context,
    inputs: List[str] = typer.Argument(..., help="Signal files to score", metavar="INPUT..."),
    scorer: Optional[str] = typer.Option(
        None, "--scorer", help="Feature scorer: energy, dilated or a plugin name"
    ),
    floor: Optional[float] = typer.Option(None, "--floor", help="Noise power floor"),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="CSV output (default: stdout)"),
    rate: float = RATE_OPTION,
    manifest: Optional[str] = MANIFEST_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    max_workers: Optional[int] = MAX_WORKERS_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    log_file: Optional[str] = LOG_FILE_OPTION,
    quiet: bool = QUIET_OPTION,
    plain: bool = PLAIN_OPTION,
):
    """
    Score signal files as signal-present or noise-only with a two-class softmax.
    """
    with _cli_errors("detect", quiet):
        file_values, settings = _setup(config, log_level, log_file, quiet, plain, max_workers)
        name, noise_floor = resolve_detect(file_values, scorer, floor)
        feature_scorer = get_scorer(name, noise_floor)

        def score(path: str) -> Dict[str, str]:
            output = detect(read_signal(path, rate), feature_scorer)
            return {
                "input": path,
                "p_signal": repr(output.p_signal),
                "p_noise": repr(output.p_noise),
                "logit_signal": repr(output.logits[0]),
                "logit_noise": repr(output.logits[1]),
                "is_signal": "1" if output.is_signal else "0",
            }

        batch = BatchProcessor(settings.max_workers).process(
            inputs, score, quiet=True, error_callback=error_handler.handle_item_error
        )
        batch.raise_first()
        stream = open(out, "w", encoding="utf-8", newline="") if out else sys.stdout
        try:
            writer = csv.DictWriter(stream, fieldnames=list(DETECT_COLUMNS))
            writer.writeheader()
            writer.writerows(batch.successful())
        finally:
            if out:
                stream.close()
        _write_manifest(
            ctx,
            manifest,
            {"scorer": name, "floor": noise_floor},
            inputs,
            [out] if out else [],
        )


def eval_command(
    ctx: typer.Context,
    scenario: str = typer.Argument(..., help="Scenario name"),
    out: str = typer.Option(..., "--out", "-o", help="CSV report (rows are appended)"),
    seeds: str = typer.Option("0", "--seeds", help="Comma-separated seeds"),
    grid: Optional[str] = typer.Option(
        None, "--grid", help="Comma-separated grid overriding the scenario default"
    ),
    manifest: Optional[str] = MANIFEST_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    max_workers: Optional[int] = MAX_WORKERS_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    log_file: Optional[str] = LOG_FILE_OPTION,
    quiet: bool = QUIET_OPTION,
    plain: bool = PLAIN_OPTION,
):
    """
    Run a named evaluation scenario and append its EvalReport rows to a CSV file.

    Scenarios: impulsive-sine, timing, snr-vs-samples, ber, gain, inp-modes, sr-sweep.
    """
    with _cli_errors("eval", quiet):
        _, settings = _setup(config, log_level, log_file, quiet, plain, max_workers)
        scenario_def = get_scenario(scenario)
        seed_list = _parse_list(seeds, int, "--seeds")
        points = None
        if grid:
            convert = str if scenario_def.name == "inp-modes" else float
            points = _parse_list(grid, convert, "--grid")
        reports = run_experiment(
            scenario, seed_list, points, max_workers=settings.max_workers, quiet=settings.quiet
        )
        ReportStore(out).append(reports)
        _write_manifest(
            ctx,
            manifest,
            {"scenario": scenario, "grid": list(points or scenario_def.grid)},
            [],
            [out],
            seed_list[0],
        )
        if not settings.quiet:
            gains = [r.snr_gain_db for r in reports]
            typer.echo(f"{scenario}: {len(reports)} row(s) written to {out}")
            typer.echo(f"mean SNR gain: {sum(gains) / len(gains):.2f} dB")


def bench_command(
    ctx: typer.Context,
    out: str = typer.Option(..., "--out", "-o", help="CSV output (count, wall_time_s)"),
    counts: str = typer.Option(
        ",".join(str(c) for c in TIMING_GRID), "--counts", help="Comma-separated signal counts"
    ),
    seed: int = typer.Option(0, "--seed", help="Noise seed"),
    manifest: Optional[str] = MANIFEST_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    log_file: Optional[str] = LOG_FILE_OPTION,
    quiet: bool = QUIET_OPTION,
    plain: bool = PLAIN_OPTION,
):
    """
    Time the default pipeline over batches of length-1024 signals.
    """
    with _cli_errors("bench", quiet):
        _setup(config, log_level, log_file, quiet, plain, None)
        grid = _parse_list(counts, int, "--counts")
        if any(c < 1 for c in grid):
            raise typer.BadParameter("--counts must be positive")
        reports = run_experiment("timing", [seed], grid, quiet=quiet)
        with open(out, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["count", "wall_time_s"])
            for r in reports:
                writer.writerow([r.param, repr(r.wall_time_s)])
        _write_manifest(ctx, manifest, PipelineConfig().to_dict(), [], [out], seed)
        if not quiet:
            typer.echo(f"{len(reports)} row(s) written to {out}")
            typer.echo(f"{reports[-1].param} signals: {reports[-1].wall_time_s:.3f}s")
            if len(reports) >= 3:
                r2 = linear_fit_r2([r.param for r in reports], [r.wall_time_s for r in reports])
                typer.echo(f"linear fit R^2: {r2:.4f}")


def dataset_command(
    ctx: typer.Context,
    out_dir: str = typer.Option(..., "--out-dir", "-o", help="Dataset directory"),
    count: int = typer.Option(100, "--count", help="Number of pairs"),
    seed: int = typer.Option(0, "--seed", help="Noise seed"),
    schemes: str = typer.Option("sine", "--schemes", help="Comma-separated schemes, cycled"),
    carrier: float = typer.Option(1000.0, "--carrier", help="Carrier frequency in Hz"),
    rate: float = RATE_OPTION,
    dur: float = typer.Option(0.1, "--dur", help="Duration in seconds"),
    symbol_rate: float = typer.Option(100.0, "--symbol-rate", help="Symbols per second"),
    bits: str = typer.Option(DEFAULT_BITS, "--bits", help="Payload bits, repeated cyclically"),
    amplitude: float = typer.Option(0.3, "--amplitude", help="Peak amplitude"),
    noise_sigma: float = typer.Option(0.5, "--noise-sigma", help="Gaussian noise sigma"),
    impulse_prob: float = typer.Option(0.0, "--impulse-prob", help="Impulse probability"),
    impulse_sigma: float = typer.Option(0.0, "--impulse-sigma", help="Impulse sigma"),
    bsr_a: float = typer.Option(1.0, "--bsr-a", help="Double-well parameter a"),
    bsr_b: float = typer.Option(1.0, "--bsr-b", help="Double-well parameter b"),
    bsr_dt: float = typer.Option(0.01, "--bsr-dt", help="Euler step"),
    manifest: Optional[str] = MANIFEST_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    max_workers: Optional[int] = MAX_WORKERS_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    log_file: Optional[str] = LOG_FILE_OPTION,
    quiet: bool = QUIET_OPTION,
    plain: bool = PLAIN_OPTION,
):
    """
    Build labelled (pre, post) pairs through the bistable system.
    """
    with _cli_errors("dataset", quiet):
        _, settings = _setup(config, log_level, log_file, quiet, plain, max_workers)
        try:
            scheme_list = [Scheme(s.strip()) for s in schemes.split(",") if s.strip()]
        except ValueError:
            raise typer.BadParameter(f"unknown scheme in --schemes {schemes!r}")
        payload = _parse_bits(bits)
        mods = [
            ModulationSpec(s, carrier, symbol_rate, () if s is Scheme.SINE else payload, amplitude)
            for s in scheme_list
        ]
        system = BsrSystem(bsr_a, bsr_b, bsr_dt)
        noise = NoiseSpec(noise_sigma, impulse_prob, impulse_sigma)
        pairs = build_dataset(
            mods, system, noise, count, seed, rate, dur, settings.max_workers, settings.quiet
        )
        written = DatasetStore(out_dir).save(pairs)
        _write_manifest(
            ctx,
            manifest or os.path.join(out_dir, "manifest.json"),
            {
                "modulations": [m.to_dict() for m in mods],
                "bsr": asdict(system),
                "noise": asdict(noise),
                "sample_rate": rate,
                "duration": dur,
            },
            [],
            written,
            seed,
        )
        if not settings.quiet:
            typer.echo(
                f"{len(pairs)} pairs written to {out_dir} "
                f"({sum(p.resonant for p in pairs)} resonant)"
            )


def replay_command(
    manifest_path: str = typer.Argument(
        ..., help="Manifest written by an earlier run", metavar="MANIFEST"
    ),
):
    """
    Re-run the command recorded in a manifest with the same arguments.
    """
    # Import here to avoid circular imports
    from . import app

    with _cli_errors("replay"):
        recorded = ManifestStore(manifest_path).load()
        if recorded.subcommand == "replay" or not recorded.argv:
            raise ConfigError(f"{manifest_path} does not record a replayable command")
        if recorded.version and recorded.version != get_version():
            logger.warning(
                f"manifest written by weaksig {recorded.version}, running {get_version()}"
            )
        command = typer.main.get_command(app)
        try:
            code = command.main(args=recorded.argv, prog_name="weaksig", standalone_mode=False)
        except WeakSigError:
            raise
        except Exception as e:
            code = getattr(e, "exit_code", 1)
            typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code or 0)
