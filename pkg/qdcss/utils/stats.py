from typing import Tuple

from scipy.stats import norm


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Args:
        successes: Number of counted events (logical errors).
        trials: Number of trials.
        confidence: Two-sided confidence level.

    Returns:
        (lower, upper), clipped to [0, 1]; (0, 1) when there are no trials.
    """
    if trials <= 0:
        return 0.0, 1.0
    z = float(norm.ppf(0.5 + confidence / 2))
    p = successes / trials
    z2 = z * z
    denom = 1 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    half = z * ((p * (1 - p) / trials + z2 / (4 * trials * trials)) ** 0.5) / denom
    return max(0.0, centre - half), min(1.0, centre + half)
