"""
Plain-text ideal files:

    ring 5 x11 x12 x21 y11 y12 y21; order negdegrevlex
    x11^2 + x12*x21
    ...

Blank lines and lines starting with '#' are ignored.
"""

import re

from app.errors import AlgebraError, IdealFileError
from app.services.coeff import Field
from app.services.groebner import Ideal
from app.services.poly import MonomialOrder, Ring

HEADER_RE = re.compile(r'^ring\s+(?P<char>\S+)\s+(?P<vars>[^;]+?)\s*;\s*order\s+(?P<order>\S+)\s*$')


def parse_header(line, lineno=1):
    match = HEADER_RE.match(line.strip())
    if not match:
        raise IdealFileError(
            "header must read 'ring <char> <vars...>; order <lex|degrevlex|negdegrevlex|block:k>'", lineno)
    try:
        char = int(match.group('char'))
    except ValueError:
        raise IdealFileError(f"characteristic {match.group('char')!r} is not an integer", lineno)
    try:
        field = Field(char)
        order = MonomialOrder.from_name(match.group('order'))
        return Ring(field, tuple(match.group('vars').split()), order)
    except AlgebraError as e:
        raise IdealFileError(str(e), lineno) from e


def parse_ideal_text(text):
    """Ideal from ideal-file text; the ring carries the declared order."""
    lines = [(i, line.strip()) for i, line in enumerate(text.splitlines(), start=1)]
    lines = [(i, line) for i, line in lines if line and not line.startswith('#')]
    if not lines:
        raise IdealFileError("empty ideal file", 1)
    lineno, header = lines[0]
    ring = parse_header(header, lineno)
    generators = []
    for lineno, line in lines[1:]:
        try:
            generators.append(ring.parse(line))
        except AlgebraError as e:
            raise IdealFileError(str(e), lineno) from e
    return Ideal(ring, tuple(generators))


def read_ideal_file(path):
    try:
        with open(path, encoding='utf-8') as f:
            return parse_ideal_text(f.read())
    except OSError as e:
        raise IdealFileError(f"cannot read {path}: {e.strerror}") from e
    except UnicodeDecodeError as e:
        raise IdealFileError(f"{path} is not UTF-8 text (byte {e.start})") from e


def format_header(ring):
    return f"ring {ring.field.characteristic} {' '.join(ring.variables)}; order {ring.order.name}"


def format_ideal(ring, polynomials):
    return "\n".join([format_header(ring)] + [str(f) for f in polynomials]) + "\n"
