from .peak_finding import Peak, interpolate_peak


__all__ = [
    "Peak",
    "interpolate_peak",
]
