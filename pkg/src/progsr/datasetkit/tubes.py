"""Spatio-temporal annotation tubes and the overlap-merge / label-split steps.

Tiny-action clips are carved out of long surveillance annotations in two
passes: first, tubes that overlap in space and time are merged into
multi-label tubes (transitive closure of the pairwise overlap relation);
second, merged tubes are split wherever the per-frame label set changes so
every resulting segment is trimmed to a constant label set.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DataError, InvalidThreshold, ShapeError

Box = tuple[float, float, float, float]  # (x, y, w, h)


@dataclass(frozen=True)
class ActionTube:
    """One annotated action: a label, a frame interval, and per-frame boxes."""

    video_id: str
    label: str
    start_frame: int
    end_frame: int
    boxes: tuple[Box, ...]
    split: str = "train"

    def __post_init__(self) -> None:
        if self.start_frame > self.end_frame:
            raise ShapeError(
                f"tube start {self.start_frame} > end {self.end_frame}")
        n = self.end_frame - self.start_frame + 1
        if len(self.boxes) != n:
            raise ShapeError(
                f"tube spans {n} frames but has {len(self.boxes)} boxes")
        for b in self.boxes:
            x, y, w, h = b
            if x < 0 or y < 0 or w <= 0 or h <= 0:
                raise ShapeError(f"invalid box {b}")

    def box_at(self, frame: int) -> Box:
        return self.boxes[frame - self.start_frame]

    @property
    def num_frames(self) -> int:
        return self.end_frame - self.start_frame + 1


@dataclass(frozen=True)
class MergedTube:
    """A connected group of overlapping tubes with per-frame label sets.

    `frame_labels[i]` and `boxes[i]` describe frame `start_frame + i`; the
    box is the union (bounding) box over all member tubes active on that
    frame.
    """

    video_id: str
    start_frame: int
    end_frame: int
    frame_labels: tuple[frozenset[str], ...]
    boxes: tuple[Box, ...]
    source_indices: tuple[int, ...]
    split: str = "train"

    def __post_init__(self) -> None:
        n = self.end_frame - self.start_frame + 1
        if len(self.frame_labels) != n or len(self.boxes) != n:
            raise ShapeError("per-frame labels/boxes must cover the span")
        if any(len(s) == 0 for s in self.frame_labels):
            raise ShapeError("every frame of a merged tube needs >= 1 label")

    @property
    def num_frames(self) -> int:
        return self.end_frame - self.start_frame + 1


def box_iou(a: Box, b: Box) -> float:
    """Intersection-over-union of two axis-aligned (x, y, w, h) boxes."""
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    ix = max(0.0, min(ax + aw, bx + bw) - max(ax, bx))
    iy = max(0.0, min(ay + ah, by + bh) - max(ay, by))
    inter = ix * iy
    union = aw * ah + bw * bh - inter
    return inter / union if union > 0 else 0.0


def union_box(boxes: list[Box]) -> Box:
    x0 = min(b[0] for b in boxes)
    y0 = min(b[1] for b in boxes)
    x1 = max(b[0] + b[2] for b in boxes)
    y1 = max(b[1] + b[3] for b in boxes)
    return (x0, y0, x1 - x0, y1 - y0)


def tubes_overlap(a: ActionTube, b: ActionTube, spatial_iou_min: float,
                  temporal_overlap_min: int) -> bool:
    """True iff the frame intervals share >= temporal_overlap_min frames and
    the per-frame box IoU reaches spatial_iou_min on at least one shared
    frame."""
    lo = max(a.start_frame, b.start_frame)
    hi = min(a.end_frame, b.end_frame)
    if hi - lo + 1 < temporal_overlap_min:
        return False
    for f in range(lo, hi + 1):
        if box_iou(a.box_at(f), b.box_at(f)) >= spatial_iou_min:
            return True
    return False


class _DisjointSet:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[rj] = ri


def merge_overlapping(tubes: list[ActionTube], spatial_iou_min: float = 0.1,
                      temporal_overlap_min: int = 1) -> list[MergedTube]:
    """Merge spatio-temporally overlapping tubes into multi-label tubes.

    Connected components of the overlap relation (transitive closure) become
    one MergedTube each, spanning the union of member intervals. Tubes must
    all come from the same video. An empty input yields an empty list.
    """
    if not 0.0 <= spatial_iou_min <= 1.0:
        raise InvalidThreshold(
            f"spatial_iou_min must lie in [0, 1], got {spatial_iou_min}")
    if temporal_overlap_min < 1:
        raise InvalidThreshold(
            f"temporal_overlap_min must be >= 1, got {temporal_overlap_min}")
    if not tubes:
        return []
    video_ids = {t.video_id for t in tubes}
    if len(video_ids) > 1:
        raise DataError(f"tubes span multiple videos: {sorted(video_ids)}")
    splits = {t.split for t in tubes}
    if len(splits) > 1:
        raise DataError(f"tubes carry conflicting split tags: {sorted(splits)}")

    dsu = _DisjointSet(len(tubes))
    for i in range(len(tubes)):
        for j in range(i + 1, len(tubes)):
            if tubes_overlap(tubes[i], tubes[j], spatial_iou_min,
                             temporal_overlap_min):
                dsu.union(i, j)

    groups: dict[int, list[int]] = {}
    for i in range(len(tubes)):
        groups.setdefault(dsu.find(i), []).append(i)

    merged = []
    for members in groups.values():
        merged.append(_build_merged(tubes, members))
    merged.sort(key=lambda m: (m.start_frame, m.end_frame,
                               tuple(sorted(m.frame_labels[0]))))
    return merged


def _build_merged(tubes: list[ActionTube], members: list[int]) -> MergedTube:
    group = [tubes[i] for i in members]
    start = min(t.start_frame for t in group)
    end = max(t.end_frame for t in group)
    frame_labels = []
    boxes = []
    for f in range(start, end + 1):
        active = [t for t in group if t.start_frame <= f <= t.end_frame]
        if not active:
            # Cannot happen: a connected overlap component covers its span.
            raise DataError(f"frame {f} uncovered inside merged span")
        frame_labels.append(frozenset(t.label for t in active))
        boxes.append(union_box([t.box_at(f) for t in active]))
    return MergedTube(video_id=group[0].video_id, start_frame=start,
                      end_frame=end, frame_labels=tuple(frame_labels),
                      boxes=tuple(boxes),
                      source_indices=tuple(sorted(members)),
                      split=group[0].split)


def split_on_label_change(tube: MergedTube) -> list[MergedTube]:
    """Partition a merged tube into segments of constant label set.

    Adjacent output segments always differ in label set; ordering and frame
    coverage are preserved exactly.
    """
    cuts = [0]
    for i in range(1, tube.num_frames):
        if tube.frame_labels[i] != tube.frame_labels[i - 1]:
            cuts.append(i)
    cuts.append(tube.num_frames)

    segments = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        segments.append(MergedTube(
            video_id=tube.video_id,
            start_frame=tube.start_frame + a,
            end_frame=tube.start_frame + b - 1,
            frame_labels=tube.frame_labels[a:b],
            boxes=tube.boxes[a:b],
            source_indices=tube.source_indices,
            split=tube.split))
    return segments
