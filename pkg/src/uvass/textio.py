"""Plain-text interchange format for VASS models.

Format (UTF-8, ``#`` starts a comment to end of line, sections in fixed
order, one transition per line)::

    vass 1
    dim 2
    alphabet a b
    states p q
    initial p
    final q
    trans p a 1 -1 q
    trans q eps 0 0 p

Serialisation is canonical: two serialisations of equal models are
byte-identical, and parse(serialize(v)) == v.
"""

from __future__ import annotations

from .model import EPS_TOKEN, ModelError, Transition, Vass, Word

__all__ = ["ParseError", "parse_vass", "serialize_vass", "parse_word"]


class ParseError(ValueError):
    """Syntax or semantic error in interchange-format text, with line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _tokenized_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if tokens:
            yield lineno, tokens


def _parse_int(lineno: int, token: str) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {token!r}") from None


def parse_vass(text: str) -> Vass:
    """Parse interchange-format text into a validated model."""
    lines = list(_tokenized_lines(text))
    pos = 0
    last_line = lines[-1][0] if lines else 0

    def take(section: str) -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(last_line + 1, f"unexpected end of input, expected '{section}'")
        lineno, tokens = lines[pos]
        if tokens[0] != section:
            raise ParseError(lineno, f"expected '{section}', got {tokens[0]!r}")
        pos += 1
        return lineno, tokens[1:]

    lineno, rest = take("vass")
    if rest != ["1"]:
        raise ParseError(lineno, f"unsupported format version {' '.join(rest)!r}")

    lineno, rest = take("dim")
    if len(rest) != 1:
        raise ParseError(lineno, "dim takes exactly one integer")
    dim = _parse_int(lineno, rest[0])
    if dim < 0:
        raise ParseError(lineno, "dim must be non-negative")

    alpha_line, alphabet = take("alphabet")
    if len(set(alphabet)) != len(alphabet):
        raise ParseError(alpha_line, "duplicate symbol in alphabet")
    if EPS_TOKEN in alphabet:
        raise ParseError(alpha_line, f"{EPS_TOKEN!r} is reserved and cannot be a symbol")

    states_line, states = take("states")
    if not states:
        raise ParseError(states_line, "at least one state is required")
    if len(set(states)) != len(states):
        raise ParseError(states_line, "duplicate state name")

    lineno, rest = take("initial")
    if len(rest) != 1:
        raise ParseError(lineno, "initial takes exactly one state")
    initial = rest[0]
    if initial not in states:
        raise ParseError(lineno, f"undeclared initial state {initial!r}")

    finals_line, finals = take("final")
    for q in finals:
        if q not in states:
            raise ParseError(finals_line, f"undeclared final state {q!r}")
    if len(set(finals)) != len(finals):
        raise ParseError(finals_line, "duplicate final state")

    state_set = set(states)
    symbol_set = set(alphabet)
    transitions = []
    while pos < len(lines):
        lineno, tokens = lines[pos]
        pos += 1
        if tokens[0] != "trans":
            raise ParseError(lineno, f"expected 'trans', got {tokens[0]!r}")
        if len(tokens) < 4:
            raise ParseError(lineno, "malformed transition line")
        if len(tokens) != 4 + dim:
            raise ParseError(lineno, f"effect arity {len(tokens) - 4}, expected {dim}")
        src, label, dst = tokens[1], tokens[2], tokens[-1]
        if src not in state_set:
            raise ParseError(lineno, f"undeclared state {src!r}")
        if dst not in state_set:
            raise ParseError(lineno, f"undeclared state {dst!r}")
        if label == EPS_TOKEN:
            parsed_label = None
        elif label in symbol_set:
            parsed_label = label
        else:
            raise ParseError(lineno, f"undeclared symbol {label!r}")
        effect = tuple(_parse_int(lineno, tok) for tok in tokens[3:-1])
        transitions.append(Transition(src, parsed_label, effect, dst))

    try:
        return Vass(dim, tuple(alphabet), tuple(states), initial, tuple(finals),
                    tuple(transitions))
    except ModelError as exc:  # everything above should have caught this earlier
        raise ParseError(0, str(exc)) from exc


def serialize_vass(v: Vass) -> str:
    """Render the canonical interchange text for a model."""
    lines = ["vass 1", f"dim {v.dim}"]
    lines.append(("alphabet " + " ".join(v.alphabet)) if v.alphabet else "alphabet")
    lines.append("states " + " ".join(v.states))
    lines.append(f"initial {v.initial}")
    lines.append(("final " + " ".join(v.finals)) if v.finals else "final")
    for t in v.transitions:
        label = EPS_TOKEN if t.label is None else t.label
        parts = ["trans", t.src, label, *(str(e) for e in t.effect), t.dst]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_word(v: Vass, text: str) -> Word:
    """Read a word from command-line text.

    Tokens are split on whitespace and commas.  A token that is itself a
    symbol stands for that symbol; otherwise, a token all of whose characters
    are symbols is spelled out character by character (so "110" works for a
    {0,1} alphabet).  The empty string and "eps" denote the empty word.
    """
    text = text.strip()
    if text in ("", EPS_TOKEN):
        return ()
    symbols = set(v.alphabet)
    word: list[str] = []
    for token in text.replace(",", " ").split():
        if token in symbols:
            word.append(token)
        elif all(ch in symbols for ch in token):
            word.extend(token)
        else:
            raise ModelError(f"cannot read {token!r} as symbols of {sorted(symbols)}")
    return tuple(word)
