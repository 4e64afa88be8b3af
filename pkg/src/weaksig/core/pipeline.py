"""The enhancement chain: INP, optional BSR, NLM, then the cumulant FIR."""

import logging
import time
from typing import Callable, Iterator, List, Sequence, Tuple

import numpy as np

from ..exceptions import StageError, ValidationError, WeakSigError
from ..models import PipelineConfig, Signal
from . import bsr, cumulant, inp, nlm

logger = logging.getLogger(__name__)


def _stage_function(stage: str, cfg: PipelineConfig, workers: int) -> Callable[[Signal], Signal]:
    if stage == "inp":
        return lambda y: inp.inp(y, cfg.inp)
    if stage == "bsr":
        assert cfg.bsr is not None
        system = cfg.bsr
        return lambda y: bsr.integrate(system, y)
    if stage == "nlm":
        return lambda y: nlm.denoise(y, cfg.nlm, workers=workers)
    return lambda y: cumulant.enhance(y, cfg.fir_lag)


def run_stages(
    y: Signal, cfg: PipelineConfig, workers: int = 1
) -> Iterator[Tuple[str, Signal, Signal]]:
    """Yield (stage, stage input, stage output) for every enabled stage in order.

    Any failure is re-raised as StageError naming the stage.
    """
    current = y
    for stage in cfg.active_stages:
        run = _stage_function(stage, cfg, workers)
        start = time.perf_counter()
        try:
            out = run(current)
        except (WeakSigError, ArithmeticError, ValueError) as e:
            raise StageError(stage, e) from e
        logger.debug(f"{stage}: {time.perf_counter() - start:.4f}s")
        yield stage, current, out
        current = out


def enhance(y: Signal, cfg: PipelineConfig, workers: int = 1) -> Signal:
    """Run the enabled stages in order, each consuming the previous output."""
    out = y
    for _, _, out in run_stages(y, cfg, workers):
        pass
    return out


def group_delay(cfg: PipelineConfig) -> int:
    """Samples of delay introduced by the enabled stages."""
    return cfg.fir_lag if cfg.use_fir else 0


def coherent_average(signals: Sequence[Signal]) -> Signal:
    """Element-wise mean of aligned acquisitions."""
    if not signals:
        raise ValidationError("coherent_average needs at least one signal")
    first = signals[0]
    lengths: List[int] = [len(s) for s in signals]
    if any(n != lengths[0] for n in lengths):
        raise ValidationError("acquisitions differ in length", details=f"lengths: {lengths}")
    if any(s.sample_rate != first.sample_rate for s in signals):
        raise ValidationError("acquisitions differ in sample rate")
    stacked = np.stack([s.samples for s in signals])
    return first.with_samples(stacked.mean(axis=0))
