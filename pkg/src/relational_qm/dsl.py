"""Line-oriented bench description language.

Grammar (one element per line, `#` comments, blank lines ignored):

    source <name>
    beamsplitter <name>
    mirror <name> arm <upper|lower>
    block arm <upper|lower>
    boxes <name> arm <upper|lower> state <Z+|Z->
    detector <D1|D2|D3>

Line order defines the composition order on the bench.  Parsing is total:
every input produces either a BenchConfig or a Diagnostic carrying the
line, column and the tokens that would have been accepted there; nothing
raises.  print/parse round-trips to an equal config.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .bench import BenchConfig, BoxPair

ARMS = ("upper", "lower")
DETECTORS = ("D1", "D2", "D3")
KEYWORDS = ("source", "beamsplitter", "mirror", "block", "boxes", "detector")


@dataclass(frozen=True)
class Diagnostic:
    """A parse or validation failure with its location."""

    line: int          # 1-based
    column: int        # 1-based
    message: str
    expected: tuple = ()

    def __str__(self):
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        return f"line {self.line}, column {self.column}: {self.message}{exp}"


@dataclass
class _Cursor:
    line_no: int
    text: str
    tokens: list
    spans: list        # column of each token
    pos: int = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def column(self):
        if self.pos < len(self.spans):
            return self.spans[self.pos]
        return (self.spans[-1] + len(self.tokens[-1])) if self.tokens else 1

    def take(self, *expected):
        tok = self.peek()
        if tok is None or (expected and tok not in expected):
            return None
        self.pos += 1
        return tok


def _tokenize(line, line_no):
    tokens, spans = [], []
    col = 0
    for raw in line.split("#")[0].split():
        col = line.index(raw, col)
        tokens.append(raw)
        spans.append(col + 1)
        col += len(raw)
    return _Cursor(line_no, line, tokens, spans)


def parse_bench(text: str, k: float = 1.0) -> Union[BenchConfig, Diagnostic]:
    """Parse a bench script; returns BenchConfig or the first Diagnostic."""
    elements = []
    state = {"source": None, "splitters": 0, "detectors": [],
             "boxes_names": set(), "occupied_arms": {}, "mirror_arms": {},
             "after_detectors": False}

    def diag(cur, message, expected=()):
        return Diagnostic(cur.line_no, cur.column(), message, tuple(expected))

    for line_no, raw in enumerate(text.splitlines(), start=1):
        cur = _tokenize(raw, line_no)
        if not cur.tokens:
            continue
        keyword = cur.take(*KEYWORDS)
        if keyword is None:
            return diag(cur, f"unknown keyword {cur.peek()!r}", KEYWORDS)
        if state["after_detectors"] and keyword != "detector":
            return diag(cur, "detectors terminate the bench", ("detector",))

        if keyword == "source":
            name = cur.take()
            if name is None:
                return diag(cur, "source needs a name", ("<name>",))
            if state["source"] is not None:
                return diag(cur, "duplicate source")
            if elements:
                return diag(cur, "source must come first")
            state["source"] = name
            elements.append(("source", name))

        elif keyword == "beamsplitter":
            name = cur.take()
            if name is None:
                return diag(cur, "beamsplitter needs a name", ("<name>",))
            if state["splitters"] >= 2:
                return diag(cur, "more than two beamsplitters")
            state["splitters"] += 1
            elements.append(("beamsplitter", name))

        elif keyword == "mirror":
            name = cur.take()
            if name is None:
                return diag(cur, "mirror needs a name", ("<name>",))
            if cur.take("arm") is None:
                return diag(cur, "mirror needs an arm clause", ("arm",))
            arm = cur.take(*ARMS)
            if arm is None:
                return diag(cur, "bad arm", ARMS)
            if state["splitters"] != 1:
                return diag(cur, f"mirror {name} is a dangling arm "
                                 "(arms exist only between the beamsplitters)")
            if arm in state["mirror_arms"]:
                return diag(cur, f"two mirrors in the {arm} arm")
            state["mirror_arms"][arm] = name
            elements.append(("mirror", name, arm))

        elif keyword == "block":
            if cur.take("arm") is None:
                return diag(cur, "block needs an arm clause", ("arm",))
            arm = cur.take(*ARMS)
            if arm is None:
                return diag(cur, "bad arm", ARMS)
            if state["splitters"] != 1:
                return diag(cur, "block is a dangling arm "
                                 "(arms exist only between the beamsplitters)")
            if arm in state["occupied_arms"]:
                return diag(cur, f"{arm} arm already occupied by "
                                 f"{state['occupied_arms'][arm]}")
            state["occupied_arms"][arm] = "block"
            elements.append(("block", arm))

        elif keyword == "boxes":
            name = cur.take()
            if name is None:
                return diag(cur, "boxes need a name", ("<name>",))
            if cur.take("arm") is None:
                return diag(cur, "boxes need an arm clause", ("arm",))
            arm = cur.take(*ARMS)
            if arm is None:
                return diag(cur, "bad arm", ARMS)
            if cur.take("state") is None:
                return diag(cur, "boxes need a state clause", ("state",))
            zst = cur.take("Z+", "Z-")
            if zst is None:
                return diag(cur, "bad box state", ("Z+", "Z-"))
            if state["splitters"] != 1:
                return diag(cur, f"boxes {name} are a dangling arm "
                                 "(arms exist only between the beamsplitters)")
            if name in state["boxes_names"]:
                return diag(cur, f"duplicate box pair {name}")
            if arm in state["occupied_arms"]:
                return diag(cur, f"{arm} arm already occupied by "
                                 f"{state['occupied_arms'][arm]}")
            state["boxes_names"].add(name)
            state["occupied_arms"][arm] = name
            elements.append(("boxes", BoxPair(name, arm, zst)))

        elif keyword == "detector":
            name = cur.take(*DETECTORS)
            if name is None:
                return diag(cur, "bad detector", DETECTORS)
            if name in state["detectors"]:
                return diag(cur, f"duplicate detector {name}")
            state["detectors"].append(name)
            state["after_detectors"] = True
            elements.append(("detector", name))

        extra = cur.peek()
        if extra is not None:
            return diag(cur, f"trailing tokens after {keyword}: {extra!r}")

    end = Diagnostic(len(text.splitlines()) + 1, 1, "", ())
    if state["source"] is None:
        return Diagnostic(end.line, 1, "no source")
    if len(state["mirror_arms"]) == 1:
        arm = next(iter(state["mirror_arms"]))
        return Diagnostic(end.line, 1,
                          f"unpaired mirror in the {arm} arm (dangling arm)")
    if not state["detectors"]:
        return Diagnostic(end.line, 1, "no detectors")
    return BenchConfig(tuple(elements), k)


def format_bench(config: BenchConfig) -> str:
    """Canonical script text; parse(format_bench(c)) == c."""
    lines = []
    for e in config.elements:
        if e[0] == "source":
            lines.append(f"source {e[1]}")
        elif e[0] == "beamsplitter":
            lines.append(f"beamsplitter {e[1]}")
        elif e[0] == "mirror":
            lines.append(f"mirror {e[1]} arm {e[2]}")
        elif e[0] == "block":
            lines.append(f"block arm {e[1]}")
        elif e[0] == "boxes":
            b = e[1]
            lines.append(f"boxes {b.name} arm {b.arm} state {b.state}")
        elif e[0] == "detector":
            lines.append(f"detector {e[1]}")
    return "\n".join(lines) + "\n"
