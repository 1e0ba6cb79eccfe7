"""Sequence databases, patterns and per-item index arrays.

Positions are 1-based everywhere they are visible to callers.  Items are
opaque string tokens; the alphabet order is plain ``str`` ordering, which for
Python strings coincides with the byte order of their UTF-8 encoding.
"""
from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, TextIO

import numpy as np

from .errors import FormatError, InputError, ParameterError

Item = str


class Format(str, enum.Enum):
    CHARS = "chars"
    TOKENS = "tokens"
    FASTA = "fasta"


@dataclass(frozen=True)
class GapConstraint:
    """Between consecutive pattern items there are at least ``a`` and at most ``b`` wildcards."""

    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, (int, np.integer)) and isinstance(self.b, (int, np.integer))):
            raise ParameterError(f"gap bounds must be integers, got [{self.a!r},{self.b!r}]")
        if self.a < 0 or self.b < self.a:
            raise ParameterError(f"gap must satisfy 0 <= a <= b, got [{self.a},{self.b}]")

    @classmethod
    def parse(cls, text: str) -> "GapConstraint":
        parts = text.replace("[", "").replace("]", "").split(",")
        if len(parts) != 2:
            raise ParameterError(f"gap must look like 'A,B', got {text!r}")
        try:
            a, b = (int(x) for x in parts)
        except ValueError:
            raise ParameterError(f"gap bounds must be integers, got {text!r}") from None
        return cls(a, b)

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]"


@dataclass(frozen=True)
class Pattern:
    items: tuple[Item, ...]
    gap: GapConstraint

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise ParameterError("a pattern needs at least one item")
        if any(not isinstance(t, str) or not t for t in self.items):
            raise ParameterError(f"pattern items must be non-empty strings: {self.items!r}")

    def __len__(self) -> int:
        return len(self.items)

    def extend(self, *items: Item) -> "Pattern":
        return Pattern(self.items + tuple(items), self.gap)

    def startswith(self, other: "Pattern") -> bool:
        return self.items[: len(other.items)] == other.items

    def __str__(self) -> str:
        sep = f"{self.gap}"
        return sep.join(self.items)


@dataclass(frozen=True)
class Sequence:
    items: tuple[Item, ...]
    id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Item]:
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]


@dataclass(frozen=True)
class SequenceDatabase:
    sequences: tuple[Sequence, ...] = ()
    alphabet: tuple[Item, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sequences", tuple(self.sequences))
        items = set()
        for s in self.sequences:
            items.update(s.items)
        object.__setattr__(self, "alphabet", tuple(sorted(items)))

    @classmethod
    def from_strings(cls, rows: Iterable[Iterable[Item]]) -> "SequenceDatabase":
        """Build a database from plain strings or token lists; ids are 1-based row numbers."""
        return cls(tuple(Sequence(tuple(r), str(i)) for i, r in enumerate(rows, 1)))

    def __len__(self) -> int:
        return len(self.sequences)

    def __iter__(self) -> Iterator[Sequence]:
        return iter(self.sequences)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return SequenceDatabase(self.sequences[i])
        return self.sequences[i]

    @property
    def total_length(self) -> int:
        return sum(len(s) for s in self.sequences)


def alphabet_of(db: SequenceDatabase) -> list[Item]:
    return list(db.alphabet)


def _read_text(source) -> str:
    if isinstance(source, str):
        return source
    try:
        data = source.read() if hasattr(source, "read") else source
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    if isinstance(data, (bytes, bytearray)):
        try:
            return bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"input is not valid UTF-8: {exc}") from exc
    return data


def parse_database(source: str | bytes | TextIO, fmt: Format | str = Format.CHARS,
                   delimiter: str = ",") -> SequenceDatabase:
    """Parse ``source`` into a :class:`SequenceDatabase`.

    ``chars``: one sequence per line, one item per character.
    ``tokens``: one sequence per line, items separated by ``delimiter``.
    ``fasta``: ``>`` header lines open a record; the remaining lines of the
    record are concatenated character-wise.

    Blank lines are skipped in every format.
    """
    fmt = Format(fmt)
    text = _read_text(source)
    seqs: list[Sequence] = []
    lines = text.splitlines()

    if fmt is Format.FASTA:
        header, chunks = None, []

        def flush():
            body = "".join(chunks)
            if body:
                seqs.append(Sequence(tuple(body), header if header is not None else str(len(seqs) + 1)))

        for line in lines:
            line = line.strip()
            if line.startswith(">"):
                flush()
                header, chunks = line[1:].strip(), []
            elif line:
                chunks.append(line)
        flush()
        return SequenceDatabase(tuple(seqs))

    if fmt is Format.TOKENS and not delimiter:
        raise ParameterError("token delimiter must be non-empty")
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        if fmt is Format.CHARS:
            items = tuple(line)
        else:
            items = tuple(t.strip() for t in line.split(delimiter))
            if any(not t for t in items):
                raise FormatError(f"line {lineno}: empty token")
        seqs.append(Sequence(items, str(lineno)))
    return SequenceDatabase(tuple(seqs))


def serialize_database(db: SequenceDatabase, fmt: Format | str = Format.CHARS,
                       delimiter: str = ",") -> str:
    """Inverse of :func:`parse_database` for databases representable in ``fmt``."""
    fmt = Format(fmt)
    out = io.StringIO()
    for s in db:
        if fmt is Format.FASTA:
            out.write(f">{s.id}\n{''.join(s.items)}\n")
        elif fmt is Format.CHARS:
            out.write("".join(s.items) + "\n")
        else:
            out.write(delimiter.join(s.items) + "\n")
    return out.getvalue()


def parse_items(text: str, fmt: Format | str = Format.CHARS, delimiter: str = ",") -> tuple[Item, ...]:
    """Split a prefix argument using the same convention as the input format."""
    fmt = Format(fmt)
    text = text.strip()
    if fmt is Format.TOKENS:
        items = tuple(t.strip() for t in text.split(delimiter))
    else:
        items = tuple(text)
    if not items or any(not t for t in items):
        raise ParameterError(f"invalid item list {text!r}")
    return items


@dataclass(frozen=True)
class IndexedSequence:
    """Per-item ascending arrays of 1-based positions for one sequence."""

    arrays: Mapping[Item, np.ndarray]
    length: int

    def __getitem__(self, item: Item) -> np.ndarray:
        arr = self.arrays.get(item)
        return arr if arr is not None else np.empty(0, dtype=np.int64)


def build_index(seq: Sequence | Iterable[Item]) -> IndexedSequence:
    items = tuple(seq)
    buckets: dict[Item, list[int]] = {}
    for pos, it in enumerate(items, 1):
        buckets.setdefault(it, []).append(pos)
    arrays = {it: np.asarray(p, dtype=np.int64) for it, p in sorted(buckets.items())}
    return IndexedSequence(arrays, len(items))


class IndexedDatabase:
    """All index arrays of a database packed into one CSR-style buffer.

    ``positions`` holds, for every sequence and every alphabet code in order,
    that item's ascending 1-based positions.  Row ``i`` of ``offsets`` has
    ``len(alphabet) + 1`` absolute offsets into ``positions`` so the array of
    code ``c`` in sequence ``i`` is ``positions[offsets[i, c]:offsets[i, c + 1]]``.
    Subsets share ``positions`` and only slice ``offsets``.
    """

    def __init__(self, alphabet, positions, offsets, lengths, ids):
        self.alphabet: tuple[Item, ...] = tuple(alphabet)
        self.code: dict[Item, int] = {it: i for i, it in enumerate(self.alphabet)}
        self.positions = positions
        self.offsets = offsets
        self.lengths = lengths
        self.ids: tuple[str, ...] = tuple(ids)

    @classmethod
    def build(cls, db: SequenceDatabase, alphabet: Iterable[Item] | None = None) -> "IndexedDatabase":
        alphabet = tuple(db.alphabet if alphabet is None else alphabet)
        code = {it: i for i, it in enumerate(alphabet)}
        h, k = len(alphabet), len(db)
        offsets = np.zeros((k, h + 1), dtype=np.int64)
        lengths = np.zeros(k, dtype=np.int64)
        chunks = []
        base = 0
        for i, s in enumerate(db):
            codes = np.fromiter((code[t] for t in s.items), dtype=np.int64, count=len(s))
            # stable sort by code keeps positions ascending inside each bucket
            order = np.argsort(codes, kind="stable")
            counts = np.bincount(codes, minlength=h)
            offsets[i, 1:] = np.cumsum(counts)
            offsets[i] += base
            chunks.append(order.astype(np.int64) + 1)
            lengths[i] = len(s)
            base += len(s)
        positions = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)
        return cls(alphabet, positions, offsets, lengths, [s.id for s in db])

    def __len__(self) -> int:
        return len(self.lengths)

    @property
    def total_length(self) -> int:
        return int(self.lengths.sum())

    def subset(self, indices) -> "IndexedDatabase":
        idx = np.asarray(indices, dtype=np.int64)
        return IndexedDatabase(self.alphabet, self.positions, self.offsets[idx],
                               self.lengths[idx], [self.ids[i] for i in idx])

    def array(self, i: int, item: Item) -> np.ndarray:
        c = self.code.get(item)
        if c is None:
            return np.empty(0, dtype=np.int64)
        return self.positions[self.offsets[i, c]:self.offsets[i, c + 1]]

    def sequence(self, i: int) -> IndexedSequence:
        arrays = {it: self.array(i, it) for it in self.alphabet}
        return IndexedSequence({it: a for it, a in arrays.items() if len(a)}, int(self.lengths[i]))

    def encode(self, items: Iterable[Item]) -> np.ndarray | None:
        """Alphabet codes of ``items``, or ``None`` if any item is unknown (support is then 0)."""
        try:
            return np.fromiter((self.code[t] for t in items), dtype=np.int64)
        except KeyError:
            return None

    def item_counts(self) -> np.ndarray:
        """Occurrences of every alphabet code summed over all sequences."""
        if len(self) == 0:
            return np.zeros(len(self.alphabet), dtype=np.int64)
        return (self.offsets[:, 1:] - self.offsets[:, :-1]).sum(axis=0)
