"""Exception types shared across the toolkit."""


class RasterFormatError(ValueError):
    """Input bytes do not decode as a supported raster format."""


class DimensionError(ValueError):
    """Raster dimensions are invalid (zero-sized or inconsistent)."""


class InfeasibleError(ValueError):
    """Clustering problem cannot be solved as posed (e.g. k > n)."""


class DegenerateImageError(ValueError):
    """Image consists entirely of background; no foreground to report on."""


class EmptySampleError(ValueError):
    """Requested a sample from a cluster with no member pixels."""


class DegenerateClusterError(ValueError):
    """Cluster covariance is singular beyond ridge repair."""


class ArtifactMissingError(KeyError):
    """Requested session artifact does not exist."""


class StageNotRunError(RuntimeError):
    """Requested an artifact from a pipeline stage that has not run yet."""
