"""Exact algebra on finite words.

A word is a plain ``bytes`` object: each byte is one symbol, written as its
0-based alphabet index.  Alphabets may use values 0..254 (255 is reserved as
an internal sentinel by the factor-enumeration machinery).  All operations
here are pure functions on immutable values.

Serialization convention: alphabets with at most 10 symbols render as digit
strings ("0110"), larger ones as comma-separated integers ("0,17,3").
"""

from math import gcd

from .errors import InvalidArgumentError, NotCommutingError, PowersOfSameWordError

Word = bytes


def word(spec) -> bytes:
    """Coerce a digit string, int iterable, or bytes into a word."""
    if isinstance(spec, (bytes, bytearray)):
        return bytes(spec)
    if isinstance(spec, str):
        if "," in spec:
            return bytes(int(t) for t in spec.split(","))
        return bytes(int(ch) for ch in spec)
    return bytes(spec)


def render(w: bytes) -> str:
    """Render a word using the serialization convention."""
    if not w:
        return ""
    if max(w) <= 9:
        return "".join(str(c) for c in w)
    return ",".join(str(c) for c in w)


def _tile_suffix(v: bytes, length: int) -> bytes:
    """The length-``length`` suffix of the left-infinite periodic word v^inf."""
    reps = -(-length // len(v))
    return (v * reps)[-length:]


def is_root(v: bytes, w: bytes) -> bool:
    """True iff |v| <= |w| and w is a suffix of the left-infinite word v^inf."""
    if not v:
        raise InvalidArgumentError("root candidate must be nonempty")
    if len(v) > len(w):
        return False
    return _tile_suffix(v, len(w)) == w


def minimal_root(w: bytes) -> bytes:
    """Shortest suffix v of w such that w is a suffix of v^inf.

    Equivalently w's suffix of length equal to w's minimal period; computed
    with a border (failure-function) table in linear time.
    """
    if not w:
        raise InvalidArgumentError("empty word has no root")
    n = len(w)
    border = [0] * n
    k = 0
    for i in range(1, n):
        while k > 0 and w[i] != w[k]:
            k = border[k - 1]
        if w[i] == w[k]:
            k += 1
        border[i] = k
    return w[-(n - border[-1]):]


def max_common_prefix(u: bytes, v: bytes) -> bytes:
    """Longest word that is a prefix of both u and v (may be empty)."""
    n = min(len(u), len(v))
    i = 0
    while i < n and u[i] == v[i]:
        i += 1
    return u[:i]


def max_common_suffix(u: bytes, v: bytes) -> bytes:
    """Longest word that is a suffix of both u and v (may be empty)."""
    n = min(len(u), len(v))
    i = 0
    while i < n and u[-1 - i] == v[-1 - i]:
        i += 1
    return u[len(u) - i:]


def max_common_suffix_periodic(v: bytes, u: bytes) -> bytes:
    """Maximal common suffix of the left-infinite words v^inf and v^inf u.

    If the scan reaches |v|+|u| agreeing symbols the two infinite words agree
    forever, which (for |v| < |u|, the typical call) forces u and v to be
    powers of a common word; that degenerate case raises
    PowersOfSameWordError.  The scan length is therefore hard-capped at
    |v|+|u| symbols.
    """
    if not v or not u:
        raise InvalidArgumentError("v and u must be nonempty")
    cap = len(v) + len(u)
    a = _tile_suffix(v, cap)          # tail of v^inf
    b = v + u                         # tail of v^inf u, same length
    i = 0
    while i < cap and a[cap - 1 - i] == b[cap - 1 - i]:
        i += 1
    if i >= cap:
        raise PowersOfSameWordError(
            "v^inf and v^inf u agree beyond |v|+|u|: u and v are powers of the same word"
        )
    return b[cap - i:]


def common_power_decomposition(u: bytes, v: bytes):
    """If uv = vu, return (base, t, s) with u = base^t, v = base^s, base minimal.

    Raises NotCommutingError otherwise.
    """
    if not u or not v:
        raise InvalidArgumentError("u and v must be nonempty")
    if u + v != v + u:
        raise NotCommutingError("uv != vu")
    g = gcd(len(u), len(v))
    base = u[:g]
    t, s = len(u) // g, len(v) // g
    # commuting words are powers of a common primitive word of length gcd
    assert base * t == u and base * s == v
    return base, t, s
