"""Patch acquisition metadata: records, CSV ingestion, mask statistics.

An archive is a flat collection of patch acquisitions.  Each acquisition is
one sensor (S1 radar or S2 optical) seen at one patch-grid cell at one time,
summarized by a :class:`PatchStat` row.  The on-disk interchange format is a
strict CSV with the columns in :data:`METADATA_COLUMNS`; a file is rejected
as a whole on the first malformed row.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, DuplicatePatchId, MalformedRow, MissingFile

SENSORS = ("S1", "S2")

DEFAULT_PATCH_SIZE = 256

# Cloud-mask class labels.
MASK_CLEAR = 0
MASK_CLOUD = 1
MASK_SHADOW = 2
MASK_NODATA = 3

METADATA_COLUMNS = (
    "patch_id",
    "tile_id",
    "row",
    "col",
    "sensor",
    "timestamp_utc",
    "cloud_fraction",
    "valid_fraction",
)


@dataclass(frozen=True, order=True)
class PatchKey:
    """Grid cell of the non-overlapping patch grid of one tile."""

    tile_id: str
    row: int
    col: int

    def __post_init__(self):
        if self.row < 0 or self.col < 0:
            raise ValueError("patch grid row/col must be non-negative")

    def __str__(self):
        return f"{self.tile_id}/{self.row}/{self.col}"


@dataclass(frozen=True)
class PatchStat:
    """Metadata of one patch acquisition.

    ``cloud_fraction`` is present exactly for S2 records (S1 backscatter is
    insensitive to clouds).  ``valid_fraction`` is the fraction of pixels
    carrying data (not equal to the raster's no-data value).
    """

    key: PatchKey
    sensor: str
    timestamp: int
    cloud_fraction: float | None
    valid_fraction: float
    patch_id: str

    def __post_init__(self):
        if self.sensor not in SENSORS:
            raise ValueError(f"unknown sensor {self.sensor!r}")
        if (self.cloud_fraction is not None) != (self.sensor == "S2"):
            raise ValueError("cloud_fraction must be present iff sensor is S2")
        if self.cloud_fraction is not None and not 0.0 <= self.cloud_fraction <= 1.0:
            raise ValueError("cloud_fraction outside [0, 1]")
        if not 0.0 <= self.valid_fraction <= 1.0:
            raise ValueError("valid_fraction outside [0, 1]")
        if not self.patch_id:
            raise ValueError("empty patch_id")


@dataclass(frozen=True)
class MetadataSchema:
    """Descriptor of the metadata file format."""

    columns: tuple[str, ...] = METADATA_COLUMNS
    delimiter: str = ","


DEFAULT_SCHEMA = MetadataSchema()


def _format_fraction(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def _record_line(r: PatchStat) -> str:
    return ",".join(
        (
            r.patch_id,
            r.key.tile_id,
            str(r.key.row),
            str(r.key.col),
            r.sensor,
            str(r.timestamp),
            _format_fraction(r.cloud_fraction),
            _format_fraction(r.valid_fraction),
        )
    )


def records_fingerprint(records) -> str:
    """Order-independent sha256 fingerprint of a record collection."""
    lines = sorted(_record_line(r) for r in records)
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode())
        h.update(b"\n")
    return h.hexdigest()


def write_metadata(records, path, schema: MetadataSchema = DEFAULT_SCHEMA) -> None:
    """Write records to a metadata CSV readable by :func:`ingest_metadata`."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        _write_metadata_stream(records, fh, schema)


def _write_metadata_stream(records, fh, schema: MetadataSchema) -> None:
    writer = csv.writer(fh, delimiter=schema.delimiter, lineterminator="\n")
    writer.writerow(schema.columns)
    for r in records:
        writer.writerow(
            (
                r.patch_id,
                r.key.tile_id,
                r.key.row,
                r.key.col,
                r.sensor,
                r.timestamp,
                _format_fraction(r.cloud_fraction),
                _format_fraction(r.valid_fraction),
            )
        )


def records_to_csv_bytes(records, schema: MetadataSchema = DEFAULT_SCHEMA) -> bytes:
    buf = io.StringIO()
    _write_metadata_stream(records, buf, schema)
    return buf.getvalue().encode()


def ingest_metadata(path, schema: MetadataSchema = DEFAULT_SCHEMA) -> list[PatchStat]:
    """Load and validate a patch-metadata CSV.

    The whole file is rejected on the first malformed row: silently dropping
    rows would bias any dataset later sampled from the archive.  Raises
    :class:`MissingFile`, :class:`MalformedRow` or :class:`DuplicatePatchId`.
    """
    path = Path(path)
    if not path.is_file():
        raise MissingFile(str(path))
    with path.open(newline="") as fh:
        return _parse_metadata(fh, schema)


def records_from_csv_bytes(data: bytes, schema: MetadataSchema = DEFAULT_SCHEMA) -> list[PatchStat]:
    return _parse_metadata(io.StringIO(data.decode()), schema)


def _parse_metadata(fh, schema: MetadataSchema) -> list[PatchStat]:
    reader = csv.reader(fh, delimiter=schema.delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRow(1, "missing header") from None
    if tuple(header) != schema.columns:
        raise MalformedRow(1, f"bad header {header!r}")

    records: list[PatchStat] = []
    seen: set[str] = set()
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(schema.columns):
            raise MalformedRow(line_no, f"expected {len(schema.columns)} fields, got {len(row)}")
        patch_id, tile_id, row_s, col_s, sensor, ts_s, cloud_s, valid_s = row
        try:
            cloud = None if cloud_s == "" else float(cloud_s)
            record = PatchStat(
                key=PatchKey(tile_id, int(row_s), int(col_s)),
                sensor=sensor,
                timestamp=int(ts_s),
                cloud_fraction=cloud,
                valid_fraction=float(valid_s),
                patch_id=patch_id,
            )
        except ValueError as exc:
            raise MalformedRow(line_no, str(exc)) from None
        if record.patch_id in seen:
            raise DuplicatePatchId(record.patch_id)
        seen.add(record.patch_id)
        records.append(record)
    return records


def cloud_fraction_from_mask(mask, expected_size: int | None = None) -> float:
    """Fraction of usable pixels flagged cloud or cloud shadow.

    The denominator excludes no-data pixels so that partially valid patches
    stay comparable with fully valid ones; an all-no-data mask counts as
    fully polluted (returns 1.0).
    """
    mask = np.asarray(mask)
    if mask.ndim != 2:
        raise DimensionMismatch(f"mask must be 2-D, got shape {mask.shape}")
    if expected_size is not None and mask.shape != (expected_size, expected_size):
        raise DimensionMismatch(
            f"mask shape {mask.shape} != ({expected_size}, {expected_size})"
        )
    if mask.size and not np.isin(mask, (MASK_CLEAR, MASK_CLOUD, MASK_SHADOW, MASK_NODATA)).all():
        raise ValueError("mask contains labels outside the cloud-mask alphabet")
    usable = int(np.count_nonzero(mask != MASK_NODATA))
    if usable == 0:
        return 1.0
    polluted = int(np.count_nonzero((mask == MASK_CLOUD) | (mask == MASK_SHADOW)))
    return polluted / usable


def valid_fraction_from_raster(raster) -> float:
    """Fraction of pixel positions where every band differs from no-data."""
    valid = raster.valid_mask()
    return float(np.count_nonzero(valid)) / valid.size
