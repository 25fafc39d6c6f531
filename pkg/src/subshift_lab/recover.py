"""Inverse problem: from a raw symbol stream of a low-complexity subshift,
recover the generating pair (pi(0), pi(1)) and the parameter sequence
(m_k, n_k), then certify the result by exact factor-set comparison.

Outline:
  1. Bootstrap.  Past the scale where p(q) < (4/3) q settles, locate a
     bi-special word w that is the unique right- and left-special word of
     its length with two successors, take its two first-return words
     (u longer, v shorter), and reduce them by the root case analysis to a
     pair (a, b) with distinct first letters and |a| < |b| < 2|a| such that
     the whole stream is a concatenation of a and b.
  2. Induction.  Because a and b start with different letters, the stream
     parses greedily into a/b blocks.  Between consecutive b-blocks only two
     distinct a-run lengths may occur (three kill the low-complexity
     hypothesis); the two run lengths give (m_k, n_k) and the next level's
     block stream, which recurses symbolically.
  3. Certificate.  Regenerate a word realizing every two-block pattern of
     the deepest recovered level and compare factor sets with the input at
     the certified length.  Certification is exact set equality; a mismatch
     refuses rather than mis-certifies.
"""

from dataclasses import dataclass

from .errors import (
    ComplexityTooHighError,
    InsufficientDataError,
    InvalidArgumentError,
    NotApplicableError,
)
from .language import LanguageTable, build_table
from .sadic import SadicParams
from .substitution import Substitution, generate_from_seed
from .words import is_root

_BOOTSTRAP_CAP = 512   # largest bi-special scale tried during bootstrap


def unique_bispecial(t: LanguageTable, q: int) -> bytes:
    """The bi-special word guaranteed in [q, q + p(q)] when p(q+1)-p(q) = 1.

    Walks the Rauzy path from the unique left-special vertex along forced
    edges to the unique right-special vertex; the concatenated labels extend
    the left-special word to one that is the unique right- and left-special
    word of its length with exactly two successors.
    """
    t._require_validated()
    if not (0 < q < t.n_max):
        raise InvalidArgumentError(f"need 0 < q < n_max={t.n_max}")
    if t.p(q + 1) - t.p(q) != 1:
        raise NotApplicableError(f"p({q + 1}) - p({q}) != 1")
    followers = t.follower_map(q)
    preceders = t.preceder_map(q)
    rights = [w for w, f in followers.items() if len(f) >= 2]
    lefts = [w for w, f in preceders.items() if len(f) >= 2]
    if len(rights) != 1 or len(lefts) != 1:
        raise NotApplicableError("not exactly one special word on each side")
    right, cur = rights[0], lefts[0]
    label = b""
    seen = 0
    while cur != right:
        f = followers[cur]
        if len(f) != 1:
            raise NotApplicableError("walk hit an unexpected branching vertex")
        (a,) = f
        label += bytes([a])
        cur = cur[1:] + bytes([a])
        seen += 1
        if seen > t.p(q) + 1:
            raise NotApplicableError("no forced path from left- to right-special vertex")
    w = lefts[0] + label
    if len(w) + 1 > t.n_max:
        raise InsufficientDataError("bi-special candidate exceeds the table depth")
    fm = t.follower_map(len(w))
    pm = t.preceder_map(len(w))
    if (sum(1 for f in fm.values() if len(f) >= 2) != 1
            or sum(1 for f in pm.values() if len(f) >= 2) != 1
            or len(fm.get(w, ())) != 2 or len(pm.get(w, ())) < 2):
        raise NotApplicableError("walk result is not the unique two-sided special word")
    return w


def return_words(t: LanguageTable, w: bytes):
    """The labels (u, v) of the two first-return cycles through w, |v| <= |u|.

    A return word r satisfies: w r ends with w and w r arises by reading
    |r| forced edges from w back to itself in the Rauzy graph of order |w|.
    """
    t._require_validated()
    n = len(w)
    followers = t.follower_map(n)
    if w not in followers or len(followers[w]) != 2:
        raise InvalidArgumentError("word must be right-special with two successors")
    labels = []
    for a in sorted(followers[w]):
        cur = w[1:] + bytes([a])
        label = bytes([a])
        steps = 0
        while cur != w:
            f = followers.get(cur)
            if f is None:
                raise InsufficientDataError(
                    "return cycle exits the table before closing"
                )
            if len(f) != 1:
                # does not happen when w is the unique right-special word
                raise InvalidArgumentError("return cycle passes a branching vertex")
            (b,) = f
            label += bytes([b])
            cur = cur[1:] + bytes([b])
            steps += 1
            if steps > t.p(n) + 1:
                raise InsufficientDataError("return cycle longer than the edge count")
        labels.append(label)
    labels.sort(key=len)
    v, u = labels
    return u, v


@dataclass(frozen=True)
class RecoveryResult:
    pi0: bytes
    pi1: bytes
    mk: tuple
    nk: tuple
    depth: int
    certified: bool
    certificate_length: int
    bootstrap_scale: int

    @property
    def params(self) -> SadicParams:
        return SadicParams(pi=Substitution((self.pi0, self.pi1)), mk=self.mk, nk=self.nk)


def _bootstrap(t: LanguageTable):
    """Find (a, b) with distinct first letters, |a| < |b| < 2|a|, a a root of b,
    tiling the stream; returns (a, b, scale used)."""
    prof = t.profile_raw()
    # start past the last observed length with p(q) >= (4/3) q
    q0 = 1
    for q in range(1, min(t.n_max, _BOOTSTRAP_CAP)):
        if 3 * prof[q] >= 4 * q:
            q0 = q + 1
    last_error = None
    for q in range(q0, min(t.n_max - 1, _BOOTSTRAP_CAP)):
        if t.p(q + 1) - t.p(q) != 1:
            continue
        try:
            w = unique_bispecial(t, q)
            u, v = return_words(t, w)
            a, b = _reduce_to_pair(t, w, u, v)
            if not (len(a) < len(b) < 2 * len(a)) or a[0] == b[0] or not b.endswith(a):
                raise InsufficientDataError("reduced pair fails the shape constraints")
            return a, b, q
        except (NotApplicableError, InsufficientDataError, InvalidArgumentError) as e:
            last_error = e
            continue
    raise InsufficientDataError(
        f"no viable bootstrap scale in [{q0}, {min(t.n_max - 1, _BOOTSTRAP_CAP)})"
        + (f"; last failure: {last_error}" if last_error else "")
    )


def _split_over_root(x: bytes, root: bytes):
    """x = head root^s with head a proper nonempty suffix of root; (head, s)."""
    if not is_root(root, x):
        raise InvalidArgumentError("not periodic over the root")
    s = 0
    rest = x
    while rest.endswith(root) and len(rest) > len(root):
        rest = rest[:-len(root)]
        s += 1
    if rest == root:
        # pure power; no proper head
        return b"", s + 1
    return rest, s


def _reduce_to_pair(t: LanguageTable, w: bytes, u: bytes, v: bytes):
    """Root case analysis turning the return pair of w into (a, b)."""
    if len(w) >= 3 * len(v):
        # refine at a smaller scale: some suffix w0 of w with |v| <= |w0| < 2|v|
        # must be the unique right-special word of its length
        for L in range(len(v), min(2 * len(v), len(w))):
            w0 = w[-L:]
            fm = t.follower_map(L)
            rights = [x for x, f in fm.items() if len(f) >= 2]
            if rights != [w0] or len(fm[w0]) != 2:
                continue
            w00 = unique_bispecial(t, L)
            u0, v0 = return_words(t, w00)
            if v0[0] != v[0]:
                u0, v0 = v0, u0
            if v0 != v:
                continue
            if len(u0) <= len(v):
                # u0 is a root of v: v = v_star u0^s, take a = u0, b = v_star u0
                v_star, _ = _split_over_root(v, u0)
                if not v_star:
                    continue
                return u0, v_star + u0
            u_star, _ = _split_over_root(u0, v)
            if not u_star:
                continue
            return v, u_star + v
        raise InsufficientDataError("no unique right-special refinement scale found")
    # |w| < 3|v|: u is a suffix of w, v is a root of u
    if len(u) > len(w) or not w.endswith(u):
        raise InsufficientDataError("long return word is not a suffix of the bi-special")
    u_star, _ = _split_over_root(u, v)
    if not u_star:
        raise InsufficientDataError("return words are powers of a common word")
    return v, u_star + v


def _greedy_parse(x: bytes, a: bytes, b: bytes):
    """Parse x into a/b blocks; the first letters differ so each position is
    forced.  Head and tail fragments are trimmed.  Returns the block list."""
    la, lb = len(a), len(b)
    best = None
    for start in range(0, min(len(x), la + lb)):
        pos = start
        blocks = []
        ok = True
        while pos < len(x):
            c = x[pos]
            if c == a[0]:
                blk, ln = a, la
            elif c == b[0]:
                blk, ln = b, lb
            else:
                ok = False
                break
            if pos + ln > len(x):
                break  # trailing fragment
            if x[pos:pos + ln] != blk:
                ok = False
                break
            blocks.append(0 if blk is a else 1)
            pos += ln
        if ok and blocks:
            best = blocks
            break
    if best is None:
        raise InsufficientDataError("stream does not parse over the recovered pair")
    return best


def _gap_values(stream):
    """Distinct lengths of 0-runs between consecutive 1s (interior only)."""
    gaps = []
    run = 0
    seen_one = False
    for t in stream:
        if t == 0:
            run += 1
        else:
            if seen_one:
                gaps.append(run)
            run = 0
            seen_one = True
    return gaps


def recover_structure(x: bytes, depth: int, min_blocks: int = 3) -> RecoveryResult:
    """Recover an S-adic description of x and certify it by round trip.

    Stops early (with whatever depth the data supports) when a level is no
    longer witnessed by at least ``min_blocks`` full blocks or shows only one
    run length; raises ComplexityTooHighError when three distinct run
    lengths appear at some level or the complexity profile is clearly out of
    family.
    """
    if depth < 1:
        raise InvalidArgumentError("depth must be >= 1")
    if len(x) < 64:
        raise InsufficientDataError("need at least 64 symbols")
    n_max = max(16, len(x) // 8)
    t = build_table(x, n_max)
    t.validated = True   # observations are exact as far as they go;
    # the final certificate, not table validation, carries correctness.
    prof = t.profile_raw()
    probe = range(max(4, n_max // 4), n_max // 2)
    if all(2 * prof[q] >= 3 * q for q in probe):
        raise ComplexityTooHighError(
            "complexity ratio stays at or above 3/2 over the probe range"
        )
    a, b, scale = _bootstrap(t)
    stream = _greedy_parse(x, a, b)
    mk, nk = [], []
    for level in range(1, depth + 1):
        ones = stream.count(1)
        if ones < min_blocks:
            break
        gaps = _gap_values(stream)
        values = sorted(set(gaps))
        if len(values) > 2:
            raise ComplexityTooHighError(
                f"three distinct run lengths {values[:3]} at level {level}"
            )
        if len(values) < 2:
            break   # cannot identify both parameters at this level
        g_m, g_n = values
        mk.append(g_m + 1)
        nk.append(g_n + 1)
        stream = _next_stream(stream, g_m, g_n)
    if not mk:
        raise InsufficientDataError("no level could be read from the stream")
    result_depth = len(mk)
    cert_len, certified = _certify(t, x, a, b, tuple(mk), tuple(nk))
    return RecoveryResult(
        pi0=a,
        pi1=b,
        mk=tuple(mk),
        nk=tuple(nk),
        depth=result_depth,
        certified=certified,
        certificate_length=cert_len,
        bootstrap_scale=scale,
    )


def _next_stream(stream, g_m, g_n):
    """Replace each (0-run, 1) group by the next-level letter: run g_m -> 0,
    run g_n -> 1.  Partial head/tail groups are dropped."""
    out = []
    run = 0
    seen_one = False
    for t in stream:
        if t == 0:
            run += 1
        else:
            if seen_one:
                out.append(0 if run == g_m else 1)
            run = 0
            seen_one = True
    return out


def _certify(t: LanguageTable, x: bytes, a: bytes, b: bytes, mk, nk):
    """Exact factor-set equality at the certified length between the input
    and a regenerated word realizing every two-block pattern of the deepest
    level.  Returns (certificate_length, ok)."""
    params = SadicParams(pi=Substitution((a, b)), mk=mk, nk=nk)
    depth = len(mk)
    from .sadic import derived_lengths

    lv, lu, _, _ = derived_lengths(params, depth + 1)
    cert_len = min(lv[depth], len(x) // 4)
    if cert_len < 1:
        return 0, False
    # seed 0 0 1 0 at the top level exhibits both run lengths
    wit = generate_from_seed(params.pi, params.pairs, depth, b"\x00\x00\x01\x00")
    lhs = set(t.factors(cert_len)) if cert_len <= t.n_max else {
        x[i:i + cert_len] for i in range(len(x) - cert_len + 1)
    }
    rhs = {wit[i:i + cert_len] for i in range(len(wit) - cert_len + 1)}
    return cert_len, lhs == rhs
