"""Clip records: size filtering, chunking, and rare-class pruning.

A ClipRecord is the unit the final dataset index consists of: a crop window
into a source video, a frame span no longer than the chunk length, and a
multi-label vector over the dataset's class vocabulary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..core import LabelVector
from ..errors import ConfigError
from .tubes import MergedTube, union_box

IntBox = tuple[int, int, int, int]


@dataclass(frozen=True)
class ClipRecord:
    video_id: str
    start_frame: int
    end_frame: int
    crop_box: IntBox  # integer (x, y, w, h) in source-video pixels
    labels: LabelVector
    split: str = "train"

    @property
    def num_frames(self) -> int:
        return self.end_frame - self.start_frame + 1

    def sort_key(self):
        return (self.video_id, self.start_frame, self.end_frame,
                self.crop_box, self.labels.active_names)


def integer_crop(tube: MergedTube) -> IntBox:
    """Bounding integer pixel window over a segment's per-frame union boxes."""
    x, y, w, h = union_box(list(tube.boxes))
    x0, y0 = math.floor(x), math.floor(y)
    x1, y1 = math.ceil(x + w), math.ceil(y + h)
    return (x0, y0, x1 - x0, y1 - y0)


def filter_and_chunk(segments: list[MergedTube], class_names,
                     max_hw: int = 128, min_frames: int = 16,
                     chunk_len: int = 128) -> list[ClipRecord]:
    """Drop oversized crops, chunk long segments, drop too-short chunks.

    Segments whose crop reaches `max_hw` in either dimension are discarded
    (tiny actions are strictly smaller). Longer segments are cut into
    consecutive chunks of at most `chunk_len` frames; any chunk shorter
    than `min_frames` (including whole short segments) is dropped.
    """
    if min_frames < 1:
        raise ConfigError(f"min_frames must be >= 1, got {min_frames}")
    if chunk_len < min_frames:
        raise ConfigError(
            f"chunk_len {chunk_len} must be >= min_frames {min_frames}")
    class_names = tuple(class_names)

    records = []
    for seg in segments:
        crop = integer_crop(seg)
        if crop[2] >= max_hw or crop[3] >= max_hw:
            continue
        labels = LabelVector.from_names(seg.frame_labels[0], class_names)
        start = seg.start_frame
        while start <= seg.end_frame:
            end = min(start + chunk_len - 1, seg.end_frame)
            if end - start + 1 >= min_frames:
                records.append(ClipRecord(
                    video_id=seg.video_id, start_frame=start, end_frame=end,
                    crop_box=crop, labels=labels, split=seg.split))
            start = end + 1
    return records


def prune_rare_classes(records: list[ClipRecord],
                       min_count: int = 50) -> tuple[list[ClipRecord],
                                                     tuple[str, ...]]:
    """Remove classes with fewer than `min_count` training records.

    Pruned labels disappear from every record (train and test); records left
    with an empty label set are dropped, and class indices are re-packed
    densely in the surviving vocabulary order.
    """
    if min_count < 1:
        raise ConfigError(f"min_count must be >= 1, got {min_count}")
    if not records:
        return [], ()

    counts: dict[str, int] = {}
    for rec in records:
        if rec.split != "train":
            continue
        for name in rec.labels.active_names:
            counts[name] = counts.get(name, 0) + 1

    original = records[0].labels.class_names
    kept = tuple(n for n in original if counts.get(n, 0) >= min_count)

    pruned = []
    for rec in records:
        active = [n for n in rec.labels.active_names if n in kept]
        if not active:
            continue
        pruned.append(replace(
            rec, labels=LabelVector.from_names(active, kept)))
    return pruned, kept
