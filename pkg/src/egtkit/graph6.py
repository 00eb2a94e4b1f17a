"""graph6 reading and writing.

Layout: a size header (one byte ``63 + n`` for n <= 62, otherwise ``~``
followed by three 6-bit bytes), then the upper triangle of the adjacency
matrix read column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed
big-endian six bits per byte, each byte offset by 63.
"""

from __future__ import annotations

from typing import IO, Iterable, Iterator, NamedTuple, Union

from .graph import MAX_VERTICES, CapacityError, Graph

HEADER_BANNER = ">>graph6<<"


class Graph6Error(ValueError):
    """Parse failure. ``kind`` is one of: header, range, truncated, padding,
    length, capacity."""

    def __init__(self, kind: str, message: str, lineno: int | None = None):
        self.kind = kind
        self.message = message
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(f"{where}{kind}: {message}")

    def at(self, lineno: int) -> Graph6Error:
        return Graph6Error(self.kind, self.message, lineno)


def _payload_length(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def parse_graph6(line: Union[str, bytes]) -> Graph:
    if isinstance(line, bytes):
        try:
            line = line.decode("ascii")
        except UnicodeDecodeError:
            raise Graph6Error("range", "non-ASCII byte") from None
    line = line.rstrip("\r\n")
    if not line:
        raise Graph6Error("header", "empty line")
    if line[0] in ":&":
        raise Graph6Error("header", "sparse6/digraph6 input is not supported")
    data = [ord(ch) - 63 for ch in line]
    for pos, value in enumerate(data):
        if not 0 <= value <= 63:
            raise Graph6Error("range", f"character {line[pos]!r} at offset {pos} outside 63..126")

    if data[0] < 63:
        n, body = data[0], data[1:]
    else:
        if len(data) < 4:
            raise Graph6Error("header", "truncated extended size header")
        if data[1] == 63:
            raise Graph6Error("capacity", "eight-byte size header (n > 258047)")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        if n <= 62:
            raise Graph6Error("header", f"extended header used for n = {n}")
        body = data[4:]
    if n > MAX_VERTICES:
        raise Graph6Error("capacity", f"{n} vertices exceeds the limit of {MAX_VERTICES}")

    need = _payload_length(n)
    if len(body) < need:
        raise Graph6Error("truncated", f"expected {need} payload bytes, found {len(body)}")
    if len(body) > need:
        raise Graph6Error("length", f"expected {need} payload bytes, found {len(body)}")

    nbits = n * (n - 1) // 2
    stream = 0
    for value in body:
        stream = (stream << 6) | value
    pad = 6 * need - nbits
    if stream & ((1 << pad) - 1):
        raise Graph6Error("padding", "nonzero padding bits")
    stream >>= pad

    adj = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if stream >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(adj))


def encode_graph6(g: Graph) -> str:
    if g.n > 62:
        raise CapacityError("graph6 output supports at most 62 vertices")
    nbits = g.n * (g.n - 1) // 2
    need = _payload_length(g.n)
    stream = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            stream = (stream << 1) | (col >> i & 1)
    stream <<= 6 * need - nbits
    out = [chr(63 + g.n)]
    for k in range(need - 1, -1, -1):
        out.append(chr(63 + (stream >> (6 * k) & 63)))
    return "".join(out)


class ParsedLine(NamedTuple):
    lineno: int
    text: str
    graph: Graph | None
    error: Graph6Error | None


def stream_graphs(source: Iterable[Union[str, bytes]], strict: bool = True) -> Iterator[ParsedLine]:
    """Lazily parse a line-oriented graph6 source.

    Blank lines and ``>>`` banner lines are skipped (a ``>>graph6<<`` banner
    glued to the first graph is stripped). In strict mode the first bad line
    raises; otherwise it is yielded with ``graph=None`` and the error set.
    """
    for lineno, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("ascii", errors="replace")
        text = raw.strip()
        if text.startswith(HEADER_BANNER):
            text = text[len(HEADER_BANNER):]
        if not text or text.startswith(">>"):
            continue
        try:
            g = parse_graph6(text)
        except Graph6Error as exc:
            err = exc.at(lineno)
            if strict:
                raise err from None
            yield ParsedLine(lineno, text, None, err)
            continue
        yield ParsedLine(lineno, text, g, None)


def write_graph6(graphs: Iterable[Graph], sink: IO[str]) -> int:
    count = 0
    for g in graphs:
        sink.write(encode_graph6(g) + "\n")
        count += 1
    return count

