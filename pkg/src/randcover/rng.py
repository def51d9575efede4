"""Counter-based pseudorandom streams.

Every random quantity in the simulators is a pure function of
``(seed, index, subindex)`` through a splitmix-style 64-bit finalizer, so
results are identical across runs, call orders, and worker counts.  There
is no generator state to carry or split.

Layout of a draw: a stream key is derived from the user seed and a stream
tag, then chained through the finalizer with the ball index and the
coordinate / position index.  The same chain is implemented three times
(python ints, vectorized numpy uint64, numba scalar) and the three agree
bitwise; tests assert this.
"""

import numpy as np

from .backend import njit

_M64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

# Stream tags keep center draws, symbol draws, and prefix draws disjoint
# even under one user seed.
TAG_CENTER = 0x63656E746572
TAG_SYMBOL = 0x73796D626F6C
TAG_PREFIX = 0x707265666978
TAG_EXTEND = 0x657874656E64

_U64_GAMMA = np.uint64(_GAMMA)
_U64_MIX_A = np.uint64(_MIX_A)
_U64_MIX_B = np.uint64(_MIX_B)

# Maximum alphabet size for bias-free-enough symbol draws without uint64
# overflow in (h >> 11) * b.
MAX_ALPHABET = 1024


def mix64(z: int) -> int:
    """Splitmix64 finalizer on a python int (mod 2**64)."""
    z &= _M64
    z ^= z >> 30
    z = (z * _MIX_A) & _M64
    z ^= z >> 27
    z = (z * _MIX_B) & _M64
    z ^= z >> 31
    return z


def stream_key(seed: int, tag: int) -> int:
    """Derive the per-stream key from a user seed and a stream tag."""
    return mix64(mix64(seed & _M64) ^ (tag & _M64))


def hash2(key: int, a: int, b: int) -> int:
    """Two-level chained hash: one 64-bit word per (key, a, b)."""
    h = mix64((key + a * _GAMMA) & _M64)
    return mix64((h + b * _GAMMA) & _M64)


def unit_from_hash(h: int) -> float:
    """Map a 64-bit word to a double in [0, 1) using the top 53 bits."""
    return (h >> 11) * 2.0**-53


def symbol_from_hash(h: int, b: int) -> int:
    """Map a 64-bit word to a symbol in {1, ..., b} (integer arithmetic)."""
    return 1 + (((h >> 11) * b) >> 53)


# -- vectorized numpy path ---------------------------------------------------


def _mix64_u64(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = z ^ (z >> np.uint64(30))
        z = z * _U64_MIX_A
        z = z ^ (z >> np.uint64(27))
        z = z * _U64_MIX_B
        z = z ^ (z >> np.uint64(31))
    return z


def hash2_array(key: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized ``hash2``; broadcasts ``a`` against ``b``."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    with np.errstate(over="ignore"):
        h = _mix64_u64(np.uint64(key & _M64) + a * _U64_GAMMA)
        h = _mix64_u64(h + b * _U64_GAMMA)
    return h


def units_from_hashes(h: np.ndarray) -> np.ndarray:
    return (h >> np.uint64(11)).astype(np.float64) * 2.0**-53


def symbols_from_hashes(h: np.ndarray, b: int) -> np.ndarray:
    if not 2 <= b <= MAX_ALPHABET:
        raise ValueError(f"alphabet size must be in [2, {MAX_ALPHABET}], got {b}")
    with np.errstate(over="ignore"):
        s = ((h >> np.uint64(11)) * np.uint64(b)) >> np.uint64(53)
    return (s + np.uint64(1)).astype(np.int64)


# -- public draw helpers -----------------------------------------------------


def center_point(seed: int, n: int, d: int) -> np.ndarray:
    """Coordinates of ball center n (1-based), uniform in [0,1)^d."""
    key = stream_key(seed, TAG_CENTER)
    return np.array(
        [unit_from_hash(hash2(key, n, j)) for j in range(d)], dtype=np.float64
    )


def center_block(seed: int, n_lo: int, n_hi: int, d: int) -> np.ndarray:
    """Centers for n in [n_lo, n_hi] as an (n_hi-n_lo+1, d) array."""
    key = stream_key(seed, TAG_CENTER)
    ns = np.arange(n_lo, n_hi + 1, dtype=np.uint64)
    js = np.arange(d, dtype=np.uint64)
    return units_from_hashes(hash2_array(key, ns[:, None], js[None, :]))


def symbol_at(seed: int, n: int, position: int, b: int) -> int:
    """Symbol of ball sequence n at 1-based position, uniform in {1..b}."""
    if not 2 <= b <= MAX_ALPHABET:
        raise ValueError(f"alphabet size must be in [2, {MAX_ALPHABET}], got {b}")
    return symbol_from_hash(hash2(stream_key(seed, TAG_SYMBOL), n, position), b)


def symbol_block(seed: int, n_lo: int, n_hi: int, positions, b: int) -> np.ndarray:
    """Symbols of balls n in [n_lo, n_hi] at the given 1-based positions.

    Returns an (n_hi-n_lo+1, len(positions)) int64 array.
    """
    key = stream_key(seed, TAG_SYMBOL)
    ns = np.arange(n_lo, n_hi + 1, dtype=np.uint64)
    ps = np.asarray(list(positions), dtype=np.uint64)
    return symbols_from_hashes(hash2_array(key, ns[:, None], ps[None, :]), b)


def prefix_choice(seed: int, sample_index: int, n_choices: int) -> int:
    """Uniform choice in [0, n_choices) for prefix sampling."""
    h = hash2(stream_key(seed, TAG_PREFIX), sample_index, 0)
    return ((h >> 11) * n_choices) >> 53


def extension_symbols(seed: int, sample_index: int, count: int, b: int) -> np.ndarray:
    """Symbols extending a sampled prefix, keyed by the sample slot."""
    key = stream_key(seed, TAG_EXTEND)
    ks = np.arange(1, count + 1, dtype=np.uint64)
    return symbols_from_hashes(hash2_array(key, np.uint64(sample_index), ks), b)


# -- numba scalar helpers (called from jitted kernels) -----------------------


@njit(cache=True, inline="always")
def nb_mix64(z):
    z = z ^ (z >> np.uint64(30))
    z = z * _U64_MIX_A
    z = z ^ (z >> np.uint64(27))
    z = z * _U64_MIX_B
    z = z ^ (z >> np.uint64(31))
    return z


@njit(cache=True, inline="always")
def nb_hash2(key, a, b):
    h = nb_mix64(key + a * _U64_GAMMA)
    return nb_mix64(h + b * _U64_GAMMA)


@njit(cache=True, inline="always")
def nb_unit(h):
    return np.float64(h >> np.uint64(11)) * 2.0**-53
