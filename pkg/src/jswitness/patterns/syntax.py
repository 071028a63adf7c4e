"""Regular-expression syntax tree and a parser for the ECMA-262 pattern subset.

Supported: literals, escapes, character classes, ``.``, ``* + ? {m,n}``
(greedy or lazy, which accept the same language), alternation, capturing,
non-capturing and named groups, and the ``^``/``$`` anchors.  Everything whose
meaning is not a regular language over the input string (lookaround,
backreferences, word boundaries) raises :class:`UnsupportedPattern`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import UnsupportedPattern

MAX_CODEPOINT = 0x10FFFF


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Chars:
    """One character drawn from a union of closed codepoint intervals."""

    ranges: tuple  # sorted, disjoint, non-adjacent (lo, hi) pairs


@dataclass(frozen=True)
class Seq:
    items: tuple


@dataclass(frozen=True)
class Alt:
    items: tuple


@dataclass(frozen=True)
class Repeat:
    item: object
    lo: int
    hi: Optional[int]  # None means unbounded


@dataclass(frozen=True)
class Anchor:
    kind: str  # "^" or "$"


EPSILON = Seq(())
NOTHING = Chars(())


def normalize_ranges(ranges) -> tuple:
    out = []
    for lo, hi in sorted(ranges):
        if lo > hi:
            continue
        if out and lo <= out[-1][1] + 1:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return tuple(out)


def negate_ranges(ranges) -> tuple:
    out = []
    nxt = 0
    for lo, hi in normalize_ranges(ranges):
        if lo > nxt:
            out.append((nxt, lo - 1))
        nxt = hi + 1
    if nxt <= MAX_CODEPOINT:
        out.append((nxt, MAX_CODEPOINT))
    return tuple(out)


def char(c: str) -> Chars:
    return Chars(((ord(c), ord(c)),))


def literal(text: str):
    """Syntax tree matching exactly ``text``."""
    return Seq(tuple(char(c) for c in text))


ANY_CODEPOINT = Chars(((0, MAX_CODEPOINT),))

# ECMA-262 character sets
LINE_TERMINATORS = ((0x0A, 0x0A), (0x0D, 0x0D), (0x2028, 0x2029))
DOT = Chars(negate_ranges(LINE_TERMINATORS))
DIGIT = ((0x30, 0x39),)
WORD = ((0x30, 0x39), (0x41, 0x5A), (0x5F, 0x5F), (0x61, 0x7A))
SPACE = normalize_ranges(
    [
        (0x09, 0x0D),
        (0x20, 0x20),
        (0xA0, 0xA0),
        (0x1680, 0x1680),
        (0x2000, 0x200A),
        (0x2028, 0x2029),
        (0x202F, 0x202F),
        (0x205F, 0x205F),
        (0x3000, 0x3000),
        (0xFEFF, 0xFEFF),
    ]
)

CLASS_ESCAPES = {
    "d": DIGIT,
    "D": negate_ranges(DIGIT),
    "w": WORD,
    "W": negate_ranges(WORD),
    "s": SPACE,
    "S": negate_ranges(SPACE),
}

CONTROL_ESCAPES = {"t": 0x09, "n": 0x0A, "v": 0x0B, "f": 0x0C, "r": 0x0D}

SYNTAX_CHARS = set("^$\\.*+?()[]{}|/")


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def fail(self, msg: str):
        raise UnsupportedPattern(f"{msg} at offset {self.pos} in {self.src!r}")

    def peek(self, k: int = 0) -> str:
        i = self.pos + k
        return self.src[i] if i < len(self.src) else ""

    def eat(self, s: str) -> bool:
        if self.src.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def parse(self):
        node = self.alternation()
        if self.pos != len(self.src):
            self.fail("unbalanced parenthesis")
        return node

    def alternation(self):
        branches = [self.sequence()]
        while self.eat("|"):
            branches.append(self.sequence())
        return branches[0] if len(branches) == 1 else Alt(tuple(branches))

    def sequence(self):
        items = []
        while self.pos < len(self.src) and self.peek() not in "|)":
            items.append(self.term())
        return items[0] if len(items) == 1 else Seq(tuple(items))

    def term(self):
        c = self.peek()
        if c in "^$":
            self.pos += 1
            node = Anchor(c)
            if self.peek() in ("*", "+", "?") or self._quantifier_ahead():
                self.fail("quantified anchor")
            return node
        atom = self.atom()
        return self.quantified(atom)

    def _quantifier_ahead(self) -> bool:
        if self.peek() != "{":
            return False
        saved = self.pos
        try:
            return self.braces() is not None
        finally:
            self.pos = saved

    def braces(self):
        """Parse ``{m}``, ``{m,}`` or ``{m,n}``; return None (position restored) otherwise."""
        start = self.pos
        if not self.eat("{"):
            return None
        lo = self.number()
        if lo is None:
            self.pos = start
            return None
        hi = lo
        if self.eat(","):
            hi = self.number()
        if not self.eat("}"):
            self.pos = start
            return None
        return lo, hi

    def number(self):
        start = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
        return int(self.src[start : self.pos]) if self.pos > start else None

    def quantified(self, atom):
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                lo, hi = 0, None
            elif c == "+":
                self.pos += 1
                lo, hi = 1, None
            elif c == "?":
                self.pos += 1
                lo, hi = 0, 1
            elif c == "{":
                bounds = self.braces()
                if bounds is None:
                    return atom
                lo, hi = bounds
                if hi is not None and hi < lo:
                    self.fail("numbers out of order in quantifier")
            else:
                return atom
            self.eat("?")  # lazy quantifiers accept the same language
            atom = Repeat(atom, lo, hi)
            if self.peek() in ("*", "+", "?") or self._quantifier_ahead():
                self.fail("nothing to repeat")

    def atom(self):
        c = self.peek()
        if c == "(":
            return self.group()
        if c == "[":
            return self.char_class()
        if c == ".":
            self.pos += 1
            return DOT
        if c == "\\":
            return self.atom_escape()
        if c in ("*", "+", "?"):
            self.fail("nothing to repeat")
        if c == "{" and self._quantifier_ahead():
            self.fail("nothing to repeat")
        self.pos += 1
        return char(c)

    def group(self):
        self.pos += 1  # "("
        if self.eat("?"):
            if self.eat(":"):
                pass
            elif self.peek() in ("=", "!"):
                self.fail("lookahead")
            elif self.src.startswith("<=", self.pos) or self.src.startswith("<!", self.pos):
                self.fail("lookbehind")
            elif self.eat("<"):
                end = self.src.find(">", self.pos)
                if end < 0:
                    self.fail("unterminated group name")
                self.pos = end + 1
            else:
                self.fail("inline flags or unknown group syntax")
        node = self.alternation()
        if not self.eat(")"):
            self.fail("missing )")
        return node

    def hex_digits(self, n: int):
        text = self.src[self.pos : self.pos + n]
        if len(text) == n and all(ch in "0123456789abcdefABCDEF" for ch in text):
            self.pos += n
            return int(text, 16)
        return None

    def char_escape(self, in_class: bool):
        """Escape producing a single codepoint, or a tuple of ranges for class escapes."""
        self.pos += 1  # backslash
        c = self.peek()
        if not c:
            self.fail("trailing backslash")
        self.pos += 1
        if c in CLASS_ESCAPES:
            return CLASS_ESCAPES[c]
        if c in CONTROL_ESCAPES:
            return CONTROL_ESCAPES[c]
        if c == "0" and not self.peek().isdigit():
            return 0
        if c.isdigit():
            if in_class:
                self.fail("octal escape in class")
            self.fail("backreference")
        if c == "b":
            if in_class:
                return 0x08
            self.fail("word boundary")
        if c == "B":
            self.fail("word boundary")
        if c == "k" and self.peek() == "<":
            self.fail("named backreference")
        if c == "c":
            letter = self.peek()
            if letter.isascii() and letter.isalpha():
                self.pos += 1
                return ord(letter) % 32
            return ord("\\")  # Annex B: "\c" not followed by a letter is literal
        if c == "x":
            v = self.hex_digits(2)
            return ord("x") if v is None else v
        if c == "u":
            if self.peek() == "{":
                end = self.src.find("}", self.pos)
                digits = self.src[self.pos + 1 : end] if end > 0 else ""
                if digits and all(ch in "0123456789abcdefABCDEF" for ch in digits):
                    self.pos = end + 1
                    v = int(digits, 16)
                    if v > MAX_CODEPOINT:
                        self.fail("codepoint out of range")
                    return v
                return ord("u")
            v = self.hex_digits(4)
            if v is None:
                return ord("u")
            if 0xD800 <= v <= 0xDBFF and self.src.startswith("\\u", self.pos):
                save = self.pos
                self.pos += 2
                low = self.hex_digits(4)
                if low is not None and 0xDC00 <= low <= 0xDFFF:
                    return 0x10000 + ((v - 0xD800) << 10) + (low - 0xDC00)
                self.pos = save
            return v
        return ord(c)  # identity escape

    def atom_escape(self):
        v = self.char_escape(in_class=False)
        if isinstance(v, tuple):
            return Chars(v)
        return Chars(((v, v),))

    def class_atom(self):
        if self.peek() == "\\":
            return self.char_escape(in_class=True)
        c = self.peek()
        self.pos += 1
        return ord(c)

    def char_class(self):
        self.pos += 1  # "["
        negated = self.eat("^")
        ranges = []
        while True:
            if self.pos >= len(self.src):
                self.fail("unterminated character class")
            if self.peek() == "]":
                self.pos += 1
                break
            lo = self.class_atom()
            if self.peek() == "-" and self.peek(1) not in ("]", ""):
                self.pos += 1
                hi = self.class_atom()
                if isinstance(lo, tuple) or isinstance(hi, tuple):
                    # Annex B: a class escape next to "-" makes the dash literal
                    for part in (lo, hi):
                        ranges.extend(part if isinstance(part, tuple) else ((part, part),))
                    ranges.append((ord("-"), ord("-")))
                    continue
                if hi < lo:
                    self.fail("range out of order in character class")
                ranges.append((lo, hi))
                continue
            if isinstance(lo, tuple):
                ranges.extend(lo)
            else:
                ranges.append((lo, lo))
        ranges = normalize_ranges(ranges)
        return Chars(negate_ranges(ranges) if negated else ranges)


def parse_regex(src: str):
    """Parse an ECMA-262 pattern (no flags) into a syntax tree."""
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# printing


def _char_text(c: int, in_class: bool) -> str:
    ch = chr(c)
    special = "\\]^-[" if in_class else "^$\\.*+?()[]{}|/"
    if ch in special:
        return "\\" + ch
    if 0x20 <= c < 0x7F:
        return ch
    if c <= 0xFFFF:
        return f"\\u{c:04x}"
    return f"\\u{{{c:x}}}"


def to_source(node) -> str:
    """Render a syntax tree back into pattern syntax (for debugging and printing)."""
    if isinstance(node, Chars):
        if node == DOT:
            return "."
        if node == ANY_CODEPOINT:
            return "[^]"
        if len(node.ranges) == 1 and node.ranges[0][0] == node.ranges[0][1]:
            return _char_text(node.ranges[0][0], False)
        parts = []
        for lo, hi in node.ranges:
            if lo == hi:
                parts.append(_char_text(lo, True))
            else:
                parts.append(_char_text(lo, True) + "-" + _char_text(hi, True))
        return "[" + "".join(parts) + "]"
    if isinstance(node, Anchor):
        return node.kind
    if isinstance(node, Seq):
        return "".join(
            "(?:" + to_source(x) + ")" if isinstance(x, Alt) else to_source(x) for x in node.items
        )
    if isinstance(node, Alt):
        return "|".join(to_source(x) for x in node.items)
    if isinstance(node, Repeat):
        inner = to_source(node.item)
        if not (isinstance(node.item, Chars)):
            inner = "(?:" + inner + ")"
        if (node.lo, node.hi) == (0, None):
            q = "*"
        elif (node.lo, node.hi) == (1, None):
            q = "+"
        elif (node.lo, node.hi) == (0, 1):
            q = "?"
        elif node.hi is None:
            q = "{%d,}" % node.lo
        elif node.hi == node.lo:
            q = "{%d}" % node.lo
        else:
            q = "{%d,%d}" % (node.lo, node.hi)
        return inner + q
    raise TypeError(node)


def node_size(node) -> int:
    if isinstance(node, (Chars, Anchor)):
        return 1
    if isinstance(node, (Seq, Alt)):
        return 1 + sum(node_size(x) for x in node.items)
    if isinstance(node, Repeat):
        return 1 + node_size(node.item)
    raise TypeError(node)
