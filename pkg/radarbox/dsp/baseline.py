"""
Classical box detector used as a stand-in for a learned network.

Implementation:
    1. CA-CFAR mask on the map.
    2. The mask is dilated by an ellipse of `merge_distance` meters and split
       into 8-connected components; each component's members are the
       undilated CFAR cells.
    3. Members' cell footprints (pixel squares or polar cells mapped to x/y)
       are reduced to their convex hull and the minimum-area rectangle is found
       with rotating calipers over the hull edges.
    4. The rectangle is completed to the prior vehicle footprint (see
       `complete_to_prior`); radar mostly returns the facing boundary.
    5. Score = clip(1 + dB(E / E_max) / score_range_db, 0, 1), E the cluster's
       summed power.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.spatial import ConvexHull, QhullError

from radarbox.core import BevImage, ConfigError, DetectionSet, OrientedBox, PolarMap

from .cfar import CfarParams, cfar_statistics

logger = logging.getLogger(__name__)

_EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)
# |cos| between an axis and the line of sight below which the axis is seen side-on
_MIN_FACING = 0.5


@dataclass(frozen=True)
class BaselineParams:
    """
    Attributes:
        merge_distance: Dilation radius in meters; detections up to twice this
            apart join one cluster
        prior_size: (w, h) of every output box, None to keep the raw fit
        score_range_db: Energy span mapped onto scores 1 .. 0
        min_cluster_cells: Smaller clusters are dropped
    """

    merge_distance: float = 1.0
    prior_size: tuple[float, float] | None = (1.8, 4.6)
    score_range_db: float = 40.0
    min_cluster_cells: int = 1

    def __post_init__(self):
        if self.merge_distance < 0:
            raise ConfigError(f"merge_distance must be >= 0, got {self.merge_distance}")
        if self.prior_size is not None:
            if len(self.prior_size) != 2 or min(self.prior_size) <= 0:
                raise ConfigError(f"prior_size must be two positive sizes, got {self.prior_size}")
            object.__setattr__(self, "prior_size", tuple(float(v) for v in self.prior_size))
        if self.score_range_db <= 0:
            raise ConfigError(f"score_range_db must be positive, got {self.score_range_db}")
        if self.min_cluster_cells < 1:
            raise ConfigError(f"min_cluster_cells must be >= 1, got {self.min_cluster_cells}")


def minimum_area_rectangle(points: np.ndarray) -> OrientedBox:
    """
    Smallest enclosing oriented rectangle of a 2D point set.

    The longer side becomes h and sets theta.

    Raises:
        ConfigError: If the points span no area.
    """
    points = np.asarray(points, dtype=float)
    try:
        hull = points[ConvexHull(points).vertices]
    except (QhullError, ValueError) as exc:
        raise ConfigError(f"cannot fit a rectangle to degenerate points: {exc}") from exc

    best = None
    for i in range(len(hull)):
        edge = hull[(i + 1) % len(hull)] - hull[i]
        length = math.hypot(edge[0], edge[1])
        if length == 0:
            continue
        u = edge / length
        v = np.array([-u[1], u[0]])
        pu, pv = hull @ u, hull @ v
        extent_u, extent_v = pu.max() - pu.min(), pv.max() - pv.min()
        area = extent_u * extent_v
        if best is None or area < best[0]:
            center = u * (pu.max() + pu.min()) / 2 + v * (pv.max() + pv.min()) / 2
            best = (area, center, u, v, extent_u, extent_v)

    assert best is not None
    _, center, u, v, extent_u, extent_v = best
    if extent_u >= extent_v:
        axis, h, w = u, extent_u, extent_v
    else:
        axis, h, w = v, extent_v, extent_u
    return OrientedBox(center[0], center[1], w, h, math.atan2(axis[1], axis[0]))


def complete_to_prior(
    box: OrientedBox,
    prior_size: tuple[float, float],
    points: np.ndarray | None = None,
    weights: np.ndarray | None = None,
) -> OrientedBox:
    """
    Resize a fitted rectangle to the prior footprint.

    A fit shorter than the mean of the prior sides is a single short face, so
    the length runs along whichever fit axis is closer to the line of sight.
    Along each axis that points at the sensor and is shorter than the prior,
    the near face stays put and the box extends away from the sensor; other
    axes keep their center. For a face thinner than half the prior, the near
    face is the power-weighted mean of `points` when given.

    Args:
        box: Raw minimum-area fit
        prior_size: Output (w, h)
        points: (n, 2) cell centers of the cluster
        weights: (n,) cell powers
    """
    prior_w, prior_h = prior_size
    center = np.array([box.cx, box.cy])
    distance = math.hypot(box.cx, box.cy)
    sight = center / distance if distance > 0 else np.array([1.0, 0.0])
    along = np.array(box.heading)
    across = np.array([-along[1], along[0]])
    length, width = box.h, box.w
    if length < (prior_w + prior_h) / 2 and abs(across @ sight) > abs(along @ sight):
        along, across = across, along
        length, width = width, length

    for axis, size, prior in ((across, width, prior_w), (along, length, prior_h)):
        facing = float(axis @ sight)
        if size >= prior or abs(facing) < _MIN_FACING:
            continue
        direction = 1.0 if facing >= 0 else -1.0
        mid = float(axis @ center)
        if points is not None and len(points) and size <= prior / 2:
            near = float(np.average(points @ axis, weights=weights))
        else:
            near = mid - direction * size / 2
        center = center + axis * (near + direction * prior / 2 - mid)
    return OrientedBox(center[0], center[1], prior_w, prior_h, math.atan2(along[1], along[0]))


def _scores(energies: list[float], score_range_db: float) -> list[float]:
    if not energies:
        return []
    peak = max(energies)
    if peak <= 0:
        return [0.0] * len(energies)
    scores = []
    for energy in energies:
        level = 10.0 * math.log10(energy / peak) if energy > 0 else -math.inf
        scores.append(float(np.clip(1.0 + level / score_range_db, 0.0, 1.0)))
    return scores


def _ellipse(radius: tuple[int, int]) -> np.ndarray:
    ry, rx = radius
    i, j = np.ogrid[-ry : ry + 1, -rx : rx + 1]
    return (i / max(ry, 1)) ** 2 + (j / max(rx, 1)) ** 2 <= 1.0


def _cluster_boxes(
    mask: np.ndarray,
    power: np.ndarray,
    dilation_radius: tuple[int, int],
    cells,
    params: BaselineParams,
) -> list[OrientedBox]:
    merged = mask
    if mask.any():
        merged = ndimage.binary_dilation(mask, structure=_ellipse(dilation_radius))
    labels, count = ndimage.label(merged, structure=_EIGHT_CONNECTED)

    fits, energies = [], []
    for index in range(1, count + 1):
        rows, cols = np.nonzero(mask & (labels == index))
        if len(rows) < params.min_cluster_cells:
            logger.debug("dropping cluster %d: %d cells", index, len(rows))
            continue
        centers, corners = cells(rows, cols)
        weights = power[rows, cols]
        box = minimum_area_rectangle(corners)
        if params.prior_size is not None:
            box = complete_to_prior(box, params.prior_size, centers, weights)
        fits.append(box)
        energies.append(float(weights.sum()))

    scores = _scores(energies, params.score_range_db)
    return [box.with_score(score) for box, score in zip(fits, scores)]


def baseline_detect_boxes(
    bev: BevImage,
    cfar_params: CfarParams | None = None,
    params: BaselineParams | None = None,
    frame_id: int = 0,
) -> DetectionSet:
    """Detect boxes on a BEV image; an empty image yields an empty set."""
    params = params or BaselineParams()
    mask, _ = cfar_statistics(bev, cfar_params)
    mpp = bev.meters_per_pixel
    radius = math.ceil(params.merge_distance / mpp)
    offsets = np.array([[-0.5, -0.5], [-0.5, 0.5], [0.5, 0.5], [0.5, -0.5]])

    def cells(rows, cols):
        r = (rows[:, None] + offsets[None, :, 0]).ravel()
        c = (cols[:, None] + offsets[None, :, 1]).ravel()
        centers = np.column_stack(bev.pixel_to_xy(rows, cols))
        return centers, np.column_stack(bev.pixel_to_xy(r, c))

    boxes = _cluster_boxes(mask, bev.values**2, (radius, radius), cells, params)
    logger.debug("frame %d: %d baseline boxes on BEV", frame_id, len(boxes))
    return DetectionSet(frame_id, tuple(boxes))


def baseline_detect_polar(
    polar: PolarMap,
    cfar_params: CfarParams | None = None,
    params: BaselineParams | None = None,
    frame_id: int = 0,
) -> DetectionSet:
    """
    Detect boxes directly on a polar map.

    Clustering happens on the polar grid; the azimuth dilation radius uses the
    farthest detection's range, so merging is never wider than on a BEV image.
    Cell footprints are mapped to x/y before the rectangle fit.
    """
    params = params or BaselineParams()
    mask, _ = cfar_statistics(polar, cfar_params)
    dr, dtheta = polar.range_bin_size, polar.azimuth_step
    azimuths = polar.azimuths

    far = (np.nonzero(mask)[0].max() + 0.5) * dr if mask.any() else dr
    radius = (
        math.ceil(params.merge_distance / dr),
        math.ceil(params.merge_distance / (far * dtheta)),
    )

    def cells(rows, cols):
        r_mid, t_mid = rows * dr, azimuths[cols]
        centers = np.column_stack([r_mid * np.cos(t_mid), r_mid * np.sin(t_mid)])
        r_lo = np.maximum(rows - 0.5, 0.0) * dr
        r_hi = (rows + 0.5) * dr
        t_lo = azimuths[cols] - dtheta / 2
        t_hi = azimuths[cols] + dtheta / 2
        r = np.concatenate([r_lo, r_lo, r_hi, r_hi])
        t = np.concatenate([t_lo, t_hi, t_lo, t_hi])
        return centers, np.column_stack([r * np.cos(t), r * np.sin(t)])

    boxes = _cluster_boxes(mask, polar.values**2, radius, cells, params)
    logger.debug("frame %d: %d baseline boxes on polar map", frame_id, len(boxes))
    return DetectionSet(frame_id, tuple(boxes))
