"""Baseline effort: the distribution-independent estimate all overheads multiply.

The baseline assumes every allocation-dependent factor at its optimal value, so
it carries no site or collaboration degradation. It is either given directly in
person-months or computed with the COCOMO II post-architecture formula, and is
split across tasks by a fixed share vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# COCOMO II.2000 calibration. The scenario file may override ΣSF/ΠEM inputs,
# but A and B are fixed model constants.
COCOMO_A = 2.94
COCOMO_B = 0.91
COCOMO_NOMINAL_SCALE_FACTOR_SUM = 18.97

SHARE_SUM_TOLERANCE = 1e-9


class BaselineError(ValueError):
    """Baseline specification is unusable (bad shares or parameters)."""


@dataclass(frozen=True)
class BaselineSpec:
    """Total baseline effort plus the per-task split.

    mode "direct" takes ``direct_total_pm`` as given; mode "cocomo" derives the
    total from ``size_kloc``, ``scale_factor_sum`` and
    ``nominal_multiplier_product``. ``shares`` maps task id to its fraction of
    the total and must sum to 1.
    """

    mode: str  # "direct" | "cocomo"
    shares: dict[str, float] = field(default_factory=dict)
    direct_total_pm: float | None = None
    size_kloc: float | None = None
    scale_factor_sum: float | None = None
    nominal_multiplier_product: float | None = None


def cocomo_effort(size_kloc: float, scale_factor_sum: float, multiplier_product: float) -> float:
    """Person-months for a project of ``size_kloc`` KLOC.

    Effort = A * size^(B + 0.01 * scale_factor_sum) * multiplier_product.
    """
    if size_kloc < 0:
        raise BaselineError(f"size_kloc must be >= 0, got {size_kloc}")
    if scale_factor_sum < 0:
        raise BaselineError(f"scale_factor_sum must be >= 0, got {scale_factor_sum}")
    if multiplier_product <= 0:
        raise BaselineError(f"multiplier_product must be > 0, got {multiplier_product}")
    exponent = COCOMO_B + 0.01 * scale_factor_sum
    return COCOMO_A * size_kloc**exponent * multiplier_product


def total_effort(spec: BaselineSpec) -> float:
    """Total baseline person-months for either mode."""
    if spec.mode == "direct":
        if spec.direct_total_pm is None or spec.direct_total_pm <= 0:
            raise BaselineError(f"direct mode needs direct_total_pm > 0, got {spec.direct_total_pm}")
        return spec.direct_total_pm
    if spec.mode == "cocomo":
        if spec.size_kloc is None or spec.size_kloc <= 0:
            raise BaselineError(f"cocomo mode needs size_kloc > 0, got {spec.size_kloc}")
        sf = spec.scale_factor_sum if spec.scale_factor_sum is not None else COCOMO_NOMINAL_SCALE_FACTOR_SUM
        em = spec.nominal_multiplier_product if spec.nominal_multiplier_product is not None else 1.0
        return cocomo_effort(spec.size_kloc, sf, em)
    raise BaselineError(f"unknown baseline mode {spec.mode!r}")


def baseline_per_task(spec: BaselineSpec) -> dict[str, float]:
    """Split the total baseline across tasks by share.

    Shares must be positive and sum to 1 within 1e-9; outputs then sum to the
    total within the same relative tolerance.
    """
    if not spec.shares:
        raise BaselineError("baseline has no task shares")
    for task, share in spec.shares.items():
        if not share > 0:
            raise BaselineError(f"share for task {task!r} must be > 0, got {share}")
    share_sum = sum(spec.shares.values())
    if abs(share_sum - 1.0) > SHARE_SUM_TOLERANCE:
        raise BaselineError(f"shares sum to {share_sum!r}, expected 1 within {SHARE_SUM_TOLERANCE}")
    total = total_effort(spec)
    return {task: total * share for task, share in spec.shares.items()}
