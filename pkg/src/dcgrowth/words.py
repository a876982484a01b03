"""Words in free groups and finite presentations.

A letter is a nonzero int: generator ``i`` (0-based) is ``i + 1`` and its
inverse is ``-(i + 1)``.  A word is a tuple of letters.  Everything here is a
pure function on immutable values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Word = tuple


class PresentationSyntaxError(ValueError):
    """Malformed presentation or word text; carries 1-based line/column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def letter(index: int, sign: int = 1) -> int:
    if index < 0 or sign not in (1, -1):
        raise ValueError(f"bad letter ({index}, {sign})")
    return sign * (index + 1)


def generator_index(x: int) -> int:
    return abs(x) - 1


def letter_sign(x: int) -> int:
    return 1 if x > 0 else -1


def letter_key(x: int) -> int:
    """Position of a letter in the fixed order a < A < b < B < ..."""
    return 2 * (abs(x) - 1) + (x < 0)


def alphabet(rank: int) -> list[int]:
    """All 2*rank letters in ShortLex letter order."""
    return sorted((s * (i + 1) for i in range(rank) for s in (1, -1)), key=letter_key)


def free_reduce(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return is_reduced(w) and (len(w) < 2 or w[0] != -w[-1])


def invert(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def multiply(*words: Sequence[int]) -> Word:
    return free_reduce(x for w in words for x in w)


def cyclic_reduce(w: Sequence[int]) -> tuple[Word, Word]:
    """Split a reduced word as ``p c p^-1`` with ``c`` cyclically reduced.

    Returns ``(p, c)``.
    """
    w = tuple(w)
    k = 0
    while 2 * k + 1 < len(w) and w[k] == -w[len(w) - 1 - k]:
        k += 1
    return w[:k], w[k:len(w) - k]


def rotations(w: Sequence[int]) -> Iterator[Word]:
    w = tuple(w)
    for i in range(len(w)):
        yield w[i:] + w[:i]


def power(w: Sequence[int], n: int) -> Word:
    if n < 0:
        return power(invert(w), -n)
    return free_reduce(tuple(w) * n)


def shortlex_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(letter_key(x) for x in w))


def shortlex_less(u: Sequence[int], v: Sequence[int]) -> bool:
    """ShortLex: shorter first, then letterwise by generator index, + before -."""
    return shortlex_key(u) < shortlex_key(v)


def reduced_words(rank: int, length: int) -> Iterator[Word]:
    """Reduced words of exactly ``length`` letters, in ShortLex order."""
    letters = alphabet(rank)

    def extend(prefix):
        if len(prefix) == length:
            yield prefix
            return
        for x in letters:
            if prefix and prefix[-1] == -x:
                continue
            yield from extend(prefix + (x,))

    yield from extend(())


def sphere_size(rank: int, r: int) -> int:
    """Number of reduced words of length exactly r over ``rank`` generators."""
    if r == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (r - 1)


def free_growth(rank: int, r: int) -> int:
    """Number of reduced words of length at most r."""
    return sum(sphere_size(rank, k) for k in range(r + 1))


# -- text format ------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple
    relators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generator_names", tuple(self.generator_names))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        if len(set(self.generator_names)) != len(self.generator_names):
            raise ValueError("generator names must be unique")
        for name in self.generator_names:
            if not _NAME.fullmatch(name):
                raise ValueError(f"invalid generator name {name!r}")
        k = self.rank
        for r in self.relators:
            if not r:
                raise ValueError("relators must be nonempty")
            if not is_cyclically_reduced(r):
                raise ValueError(f"relator {r} is not cyclically reduced")
            if any(x == 0 or abs(x) > k for x in r):
                raise ValueError(f"relator {r} uses a letter outside the alphabet")

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generator_names)

    def format_word(self, w: Sequence[int]) -> str:
        return format_word(w, self.generator_names)

    def __str__(self):
        return format_presentation(self)


def _inverse_token(name: str, names: Sequence[str]) -> str:
    if len(name) == 1 and name.islower() and name.upper() not in names:
        return name.upper()
    return name + "-"


def _token_table(names: Sequence[str]) -> dict:
    table = {}
    for i, name in enumerate(names):
        table[name] = i + 1
        table[name + "-"] = -(i + 1)
        inv = _inverse_token(name, names)
        table.setdefault(inv, -(i + 1))
    return table


def _parse_tokens(chunks, names, table, line_of):
    """``chunks`` is a list of (text, offset) pairs; returns a list of letters."""
    letters = []
    for text, offset in chunks:
        if text in table:
            letters.append(table[text])
            continue
        # juxtaposed single-letter tokens such as "abAB"
        for j, ch in enumerate(text):
            if ch not in table:
                line, col = line_of(offset + j)
                raise PresentationSyntaxError(f"unknown generator letter {ch!r}", line, col)
            letters.append(table[ch])
    return letters


def _line_col(text):
    starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def line_of(offset):
        line = max(i for i, s in enumerate(starts) if s <= offset)
        return line + 1, offset - starts[line] + 1

    return line_of


def _chunks(text, start, end):
    return [(m.group(), start + m.start()) for m in re.finditer(r"\S+", text[start:end])]


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse a word such as ``"abAB"``, ``"a b A B"`` or ``"x1 x2-"``.

    The result is freely reduced.  ``"1"`` or an empty string is the identity.
    """
    names = tuple(names)
    table = _token_table(names)
    chunks = [(t, o) for t, o in _chunks(text, 0, len(text)) if t != "1"]
    return free_reduce(_parse_tokens(chunks, names, table, _line_col(text)))


def parse_presentation(text: str) -> Presentation:
    """Parse ``< g1 g2 ... | w1 , w2 , ... >``.

    Relators are freely and cyclically reduced; the conjugator is dropped.
    ``#`` starts a comment running to the end of the line.
    """
    text = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    line_of = _line_col(text)
    lt = text.find("<")
    if lt < 0 or text[:lt].strip():
        raise PresentationSyntaxError("expected '<'", *line_of(max(lt, 0)))
    bar = text.find("|", lt)
    if bar < 0:
        raise PresentationSyntaxError("expected '|'", *line_of(len(text)))
    gt = text.find(">", bar)
    if gt < 0:
        raise PresentationSyntaxError("expected '>'", *line_of(len(text)))
    if text[gt + 1:].strip():
        off = gt + 1 + (len(text[gt + 1:]) - len(text[gt + 1:].lstrip()))
        raise PresentationSyntaxError("trailing text after '>'", *line_of(off))

    names = []
    for name, offset in _chunks(text, lt + 1, bar):
        if not _NAME.fullmatch(name) or name.endswith("-"):
            raise PresentationSyntaxError(f"invalid generator name {name!r}", *line_of(offset))
        if name in names:
            raise PresentationSyntaxError(f"duplicate generator {name!r}", *line_of(offset))
        names.append(name)
    table = _token_table(names)

    body = text[bar + 1:gt]
    relators = []
    if body.strip():
        pos = bar + 1
        for piece in body.split(","):
            chunks = _chunks(text, pos, pos + len(piece))
            if not chunks:
                raise PresentationSyntaxError("empty relator", *line_of(pos))
            w = free_reduce(_parse_tokens(chunks, names, table, line_of))
            _, core = cyclic_reduce(w)
            if not core:
                raise PresentationSyntaxError("relator is trivial after reduction",
                                              *line_of(chunks[0][1]))
            relators.append(core)
            pos += len(piece) + 1
    return Presentation(tuple(names), tuple(relators))


def format_word(w: Sequence[int], names: Sequence[str]) -> str:
    """Space-separated tokens; the identity is ``"1"``."""
    if not w:
        return "1"
    return " ".join(names[x - 1] if x > 0 else _inverse_token(names[-x - 1], names) for x in w)


def compact_word(w: Sequence[int], names: Sequence[str]) -> str:
    """Juxtaposed form (``"abAB"``) when every name is one letter, else ``format_word``."""
    if all(len(n) == 1 for n in names):
        return "".join(format_word(w, names).split()) if w else "1"
    return format_word(w, names)


def format_presentation(p: Presentation) -> str:
    gens = " ".join(p.generator_names)
    rels = " , ".join(format_word(r, p.generator_names) for r in p.relators)
    return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


def read_presentation(path) -> Presentation:
    with open(path) as fh:
        return parse_presentation(fh.read())


def read_subgroup(path, names: Sequence[str]) -> list[Word]:
    """One generator word per line; blank lines and ``#`` comments skipped."""
    gens = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                gens.append(parse_word(line, names))
    return gens
