"""Google Books Ngram v2 1-gram ingestion.

Parses the tab-separated wire format (token, year, match_count,
volume_count per line), normalizes and filters tokens, aggregates
per-year frequency tables and persists them as deterministic TSV
snapshots.
"""
from __future__ import annotations

import dataclasses
import gzip
import io
import unicodedata
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .errors import CorruptSnapshot, DomainError, MalformedLine, MalformedRecord

_ASCII_LOWER = frozenset("abcdefghijklmnopqrstuvwxyz")


class TokenRecord(NamedTuple):
    token: str
    year: int
    match_count: int
    volume_count: int


@dataclass(frozen=True)
class FilterConfig:
    """Token acceptance policy.

    Exactly one alphabet policy is active: a script name (characters are
    letters whose Unicode name carries the script prefix, so "naïve"
    passes for latin), an explicit charset, or ascii_strict (a-z only,
    applied after case folding).
    """

    case_fold: bool = True
    alphabet: str | frozenset[str] = "latin"
    ascii_strict: bool = False
    reject_tagged: bool = True

    def __post_init__(self):
        if isinstance(self.alphabet, str):
            if not self.alphabet:
                raise DomainError("alphabet script name must be non-empty")
        elif isinstance(self.alphabet, frozenset):
            if self.ascii_strict:
                raise DomainError("ascii_strict and an explicit charset are two alphabet policies; pick one")
            if not self.alphabet:
                raise DomainError("explicit charset must be non-empty")
        else:
            object.__setattr__(self, "alphabet", frozenset(self.alphabet))
            if self.ascii_strict:
                raise DomainError("ascii_strict and an explicit charset are two alphabet policies; pick one")
        if self.ascii_strict and isinstance(self.alphabet, str) and self.alphabet.lower() != "latin":
            raise DomainError("ascii_strict implies the latin alphabet")


def _script_ok(token: str, prefix: str) -> bool:
    for ch in token:
        if not ch.isalpha():
            return False
        if not unicodedata.name(ch, "").startswith(prefix):
            return False
    return True


def normalize_token(token: str, cfg: FilterConfig) -> str | None:
    """Case-fold and filter one token; None means Reject.

    Folding uses str.lower(), the simple one-to-one lowercase mapping.
    Tokens containing "_" (POS tags, corpus sentinels like _START_) are
    rejected when cfg.reject_tagged.
    """
    if not token:
        return None
    if cfg.reject_tagged and "_" in token:
        return None
    folded = token.lower() if cfg.case_fold else token
    if cfg.ascii_strict:
        if not folded or not all(c in _ASCII_LOWER for c in folded):
            return None
        return folded
    if isinstance(cfg.alphabet, frozenset):
        if not all(c in cfg.alphabet for c in folded):
            return None
        return folded
    if not _script_ok(folded, cfg.alphabet.upper()):
        return None
    return folded


def _parse_count(text: str, what: str) -> int:
    # isascii guard: isdigit alone admits forms like "²" that int() rejects
    if not text or not text.isascii() or not text.isdigit():
        raise MalformedLine(f"non-numeric {what}: {text!r}")
    return int(text)


def parse_ngram_line(line: str) -> TokenRecord | None:
    """Parse one 1-gram line; None for a blank line (Skip).

    Raises MalformedLine for a wrong field count or non-numeric
    year/count fields; the caller attaches the line number.
    """
    stripped = line.rstrip("\r\n")
    if not stripped.strip():
        return None
    fields = stripped.split("\t")
    if len(fields) != 4:
        raise MalformedLine(f"expected 4 tab-separated fields, got {len(fields)}")
    token, year_s, match_s, volume_s = fields
    if not token:
        raise MalformedLine("empty token field")
    year_body = year_s[1:] if year_s.startswith("-") else year_s
    if not year_body.isascii() or not year_body.isdigit():
        raise MalformedLine(f"non-numeric year: {year_s!r}")
    return TokenRecord(
        token=token,
        year=int(year_s),
        match_count=_parse_count(match_s, "match_count"),
        volume_count=_parse_count(volume_s, "volume_count"),
    )


@dataclass
class IngestReport:
    """Counters accumulated while streaming ngram lines."""

    lines_read: int = 0
    blank_lines: int = 0
    malformed_lines: int = 0
    records_parsed: int = 0
    records_accepted: int = 0
    records_rejected: int = 0
    malformed_examples: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def read_records(
    lines: Iterable[str],
    strict: bool = False,
    report: IngestReport | None = None,
) -> Iterator[TokenRecord]:
    """Yield TokenRecords from raw lines.

    Malformed lines abort with MalformedLine in strict mode and are
    counted (with a few examples kept) otherwise.
    """
    rep = report if report is not None else IngestReport()
    for lineno, line in enumerate(lines, start=1):
        rep.lines_read += 1
        try:
            rec = parse_ngram_line(line)
        except MalformedLine as exc:
            if strict:
                raise MalformedLine(exc.reason, lineno) from None
            rep.malformed_lines += 1
            if len(rep.malformed_examples) < 5:
                rep.malformed_examples.append(f"line {lineno}: {exc.reason}")
            continue
        if rec is None:
            rep.blank_lines += 1
            continue
        rep.records_parsed += 1
        yield rec


class FrequencyTable:
    """Per-year token counts plus the total token count L.

    Immutable once constructed; construction checks every count is
    positive and that total_tokens matches the sum.
    """

    __slots__ = ("year", "counts", "total_tokens")

    def __init__(self, year: int, counts: dict[str, int], total_tokens: int | None = None):
        total = 0
        for token, count in counts.items():
            if not token:
                raise DomainError("empty token in frequency table")
            if count < 1:
                raise DomainError(f"count for {token!r} must be >= 1, got {count}")
            total += count
        if total_tokens is not None and total_tokens != total:
            raise CorruptSnapshot(
                f"declared total {total_tokens} != sum of counts {total} for year {year}"
            )
        self.year = int(year)
        self.counts = dict(counts)
        self.total_tokens = total

    @property
    def distinct_tokens(self) -> int:
        return len(self.counts)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FrequencyTable)
            and self.year == other.year
            and self.counts == other.counts
        )

    def __repr__(self) -> str:
        return f"FrequencyTable(year={self.year}, N={self.distinct_tokens}, L={self.total_tokens})"

    def sorted_items(self) -> list[tuple[str, int]]:
        """Items by descending count, ties by ascending token byte order.

        UTF-8 byte order coincides with code point order, so plain str
        comparison implements the byte-order tie-break.
        """
        return sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))


def build_year_tables(
    records: Iterable[TokenRecord],
    cfg: FilterConfig,
    report: IngestReport | None = None,
) -> dict[int, FrequencyTable]:
    """Aggregate accepted records into one FrequencyTable per year."""
    acc: dict[int, dict[str, int]] = {}
    for rec in records:
        norm = normalize_token(rec.token, cfg)
        if norm is None:
            if report is not None:
                report.records_rejected += 1
            continue
        if report is not None:
            report.records_accepted += 1
        year_counts = acc.setdefault(rec.year, {})
        year_counts[norm] = year_counts.get(norm, 0) + rec.match_count
    return {year: FrequencyTable(year, counts) for year, counts in acc.items()}


def merge_year_tables(parts: Iterable[dict[int, FrequencyTable]]) -> dict[int, FrequencyTable]:
    """Merge per-shard year tables by commutative count addition."""
    acc: dict[int, dict[str, int]] = {}
    for tables in parts:
        for year, table in tables.items():
            year_counts = acc.setdefault(year, {})
            for token, count in table.counts.items():
                year_counts[token] = year_counts.get(token, 0) + count
    return {year: FrequencyTable(year, counts) for year, counts in acc.items()}


def load_totalcounts(text: str) -> dict[int, tuple[int, int, int]]:
    """Parse a totalcounts file: whitespace-separated
    "year,match_count,page_count,volume_count" records."""
    out: dict[int, tuple[int, int, int]] = {}
    for chunk in text.split():
        parts = chunk.split(",")
        if len(parts) != 4:
            raise MalformedRecord(f"expected 4 comma-separated fields: {chunk!r}")
        year_body = parts[0][1:] if parts[0].startswith("-") else parts[0]
        numeric = all(p.isascii() and p.isdigit() for p in (year_body, *parts[1:]))
        if not numeric:
            raise MalformedRecord(f"non-numeric field in record {chunk!r}")
        year = int(parts[0])
        if year in out:
            raise MalformedRecord(f"duplicate year {year}")
        out[year] = (int(parts[1]), int(parts[2]), int(parts[3]))
    return out


SNAPSHOT_HEADER_PREFIX = "#year="


def snapshot_bytes(table: FrequencyTable) -> bytes:
    """Serialize a table to the deterministic TSV snapshot format."""
    lines = [f"{SNAPSHOT_HEADER_PREFIX}{table.year}\tL={table.total_tokens}"]
    for token, count in table.sorted_items():
        lines.append(f"{token}\t{count}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_snapshot(data: bytes) -> FrequencyTable:
    """Inverse of snapshot_bytes; raises CorruptSnapshot on any mismatch."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorruptSnapshot(f"snapshot is not valid UTF-8: {exc}") from None
    lines = text.splitlines()
    if not lines or not lines[0].startswith(SNAPSHOT_HEADER_PREFIX):
        raise CorruptSnapshot("missing #year= header line")
    header_fields = lines[0].split("\t")
    if len(header_fields) != 2 or not header_fields[1].startswith("L="):
        raise CorruptSnapshot(f"bad header: {lines[0]!r}")
    try:
        year = int(header_fields[0][len(SNAPSHOT_HEADER_PREFIX):])
        declared_total = int(header_fields[1][2:])
    except ValueError:
        raise CorruptSnapshot(f"bad header: {lines[0]!r}") from None
    counts: dict[str, int] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0] or not (fields[1].isascii() and fields[1].isdigit()):
            raise CorruptSnapshot(f"bad row at line {lineno}: {line!r}")
        token, count = fields[0], int(fields[1])
        if token in counts:
            raise CorruptSnapshot(f"duplicate token {token!r} at line {lineno}")
        if count < 1:
            raise CorruptSnapshot(f"non-positive count at line {lineno}")
        counts[token] = count
    if sum(counts.values()) != declared_total:
        raise CorruptSnapshot(
            f"header L={declared_total} != sum of counts {sum(counts.values())}"
        )
    return FrequencyTable(year, counts, total_tokens=declared_total)


def write_snapshot_file(table: FrequencyTable, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(snapshot_bytes(table))
    return path


def read_snapshot_file(path: str | Path) -> FrequencyTable:
    return parse_snapshot(Path(path).read_bytes())


def open_text_auto(path: str | Path) -> io.TextIOBase:
    """Open a plain or gzip-compressed text file, detected by magic bytes."""
    path = Path(path)
    with open(path, "rb") as probe:
        magic = probe.read(2)
    if magic == b"\x1f\x8b":
        return io.TextIOWrapper(gzip.open(path, "rb"), encoding="utf-8")
    return open(path, "r", encoding="utf-8")
