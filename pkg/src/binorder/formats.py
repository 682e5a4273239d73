"""Text formats for identities and certificates (UTF-8, LF line endings).

Identity::

    IDENTITY v1
    n=15
    A=0,4,6,13
    B=1,3,5,10

Certificate::

    ORDERABLE-CERT v1
    n=6
    A=0,3
    B=1,2
    type=perfect
    pairs=21
    0x0 0x1
    ...

Pair lines hold lowercase ``0x`` hex masks sorted ascending by source.
Parsers here are strict and raise :class:`ParseError` with the line number.
"""
from __future__ import annotations

import re
from pathlib import Path

from .errors import ParseError
from .identity import IdentitySpec
from .matching import INJECTION, PERFECT, MatchingCertificate

IDENTITY_HEADER = "IDENTITY v1"
CERT_HEADER = "ORDERABLE-CERT v1"

_DECIMAL = re.compile(r"0|[1-9][0-9]*")
_HEX = re.compile(r"0x(?:0|[1-9a-f][0-9a-f]*)")


def _levels(levels) -> str:
    return ",".join(str(x) for x in levels)


def write_identity(spec: IdentitySpec) -> str:
    return f"{IDENTITY_HEADER}\nn={spec.n}\nA={_levels(spec.A)}\nB={_levels(spec.B)}\n"


def write_identities(specs) -> str:
    return "".join(write_identity(s) for s in specs)


def _lines(text: str) -> list[str]:
    if "\r" in text:
        raise ParseError(text[: text.index("\r")].count("\n") + 1, "CR characters are not allowed")
    if text and not text.endswith("\n"):
        raise ParseError(text.count("\n") + 1, "missing final newline")
    return text.split("\n")[:-1] if text else []


def _field(line: str, lineno: int, key: str) -> str:
    prefix = key + "="
    if not line.startswith(prefix):
        raise ParseError(lineno, f"expected '{prefix}...'")
    return line[len(prefix):]


def _decimal(text: str, lineno: int) -> int:
    if not _DECIMAL.fullmatch(text):
        raise ParseError(lineno, f"bad decimal {text!r}")
    return int(text)


def _level_list(text: str, lineno: int) -> tuple[int, ...]:
    if not text:
        raise ParseError(lineno, "empty level list")
    out = tuple(_decimal(tok, lineno) for tok in text.split(","))
    for x, y in zip(out, out[1:]):
        if x == y:
            raise ParseError(lineno, f"duplicate level {x}")
        if x > y:
            raise ParseError(lineno, "levels not ascending")
    return out


def _parse_identity_block(lines: list[str], start: int) -> IdentitySpec:
    if lines[0] != IDENTITY_HEADER:
        raise ParseError(start, f"expected {IDENTITY_HEADER!r}")
    n = _decimal(_field(lines[1], start + 1, "n"), start + 1)
    A = _level_list(_field(lines[2], start + 2, "A"), start + 2)
    B = _level_list(_field(lines[3], start + 3, "B"), start + 3)
    return IdentitySpec(n, A, B)


def parse_identity_records(text: str) -> list[IdentitySpec]:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty identity file")
    if len(lines) % 4:
        raise ParseError(len(lines) + 1, "truncated identity record")
    return [_parse_identity_block(lines[i:i + 4], i + 1) for i in range(0, len(lines), 4)]


def parse_identity(text: str) -> IdentitySpec:
    records = parse_identity_records(text)
    if len(records) != 1:
        raise ParseError(5, f"expected one identity, found {len(records)}")
    return records[0]


def write_certificate(cert: MatchingCertificate) -> str:
    head = [
        CERT_HEADER,
        f"n={cert.n}",
        f"A={_levels(cert.A)}",
        f"B={_levels(cert.B)}",
        f"type={cert.kind}",
        f"pairs={len(cert.pairs)}",
    ]
    body = [f"{s:#x} {t:#x}" for s, t in cert.pairs]
    return "\n".join(head + body) + "\n"


def parse_certificate(text: str) -> MatchingCertificate:
    lines = _lines(text)
    if len(lines) < 6:
        raise ParseError(len(lines) + 1, "truncated certificate header")
    if lines[0] != CERT_HEADER:
        raise ParseError(1, f"expected {CERT_HEADER!r}")
    n = _decimal(_field(lines[1], 2, "n"), 2)
    A = _level_list(_field(lines[2], 3, "A"), 3)
    B = _level_list(_field(lines[3], 4, "B"), 4)
    kind = _field(lines[4], 5, "type")
    if kind not in (PERFECT, INJECTION):
        raise ParseError(5, f"unknown type {kind!r}")
    count = _decimal(_field(lines[5], 6, "pairs"), 6)
    body = lines[6:]
    if len(body) != count:
        raise ParseError(7 + min(len(body), count), f"declared {count} pairs, found {len(body)}")
    pairs = []
    prev = -1
    for i, line in enumerate(body, start=7):
        parts = line.split(" ")
        if len(parts) != 2 or not all(_HEX.fullmatch(p) for p in parts):
            raise ParseError(i, "expected '<hex source> <hex image>'")
        s, t = int(parts[0], 16), int(parts[1], 16)
        if s == prev:
            raise ParseError(i, f"duplicate source {parts[0]}")
        if s < prev:
            raise ParseError(i, "pairs not sorted by source")
        prev = s
        pairs.append((s, t))
    return MatchingCertificate(n, A, B, kind, tuple(pairs))


def read_text(path) -> str:
    return Path(path).read_bytes().decode("utf-8")


def write_text(path, text: str) -> None:
    Path(path).write_bytes(text.encode("utf-8"))
