"""Hot numeric kernels with optional numba acceleration.

Each hot kernel exists in two functionally identical versions: a numba
``@njit`` build (default when numba imports) and a vectorized pure-numpy
fallback. Setting the environment variable ``MTSINE_DISABLE_NUMBA`` to
``1``/``true``/``yes`` before import forces the numpy path; a missing
numba installation falls back silently. Both paths compute the same
sums in the same order per output bin, so results agree to floating
point round-off (see tests/test_kernels.py and benchmarks/). The one
exception is fixed-width circular smoothing, which is fastest through
numpy's compiled convolution and therefore has no jitted build.

Kernel shape ids used by the smoothing kernels: 0 = box, 1 = parabolic
(Epanechnikov). Profiles are the unit-mass shapes on [-1, 1]; discrete
weights are renormalized to sum to one so constants pass through
unchanged.
"""

import os

import numpy as np

__all__ = [
    "NUMBA_ENABLED",
    "combine_shifts",
    "combine_shifts_np",
    "variable_k_combine",
    "variable_k_combine_np",
    "smooth_circular",
    "smooth_circular_np",
    "smooth_variable",
    "smooth_variable_np",
    "ar_recurse",
    "ar_recurse_np",
]

KERNEL_BOX = 0
KERNEL_PARABOLIC = 1

_disabled = os.environ.get("MTSINE_DISABLE_NUMBA", "").strip().lower() in (
    "1",
    "true",
    "yes",
)
if not _disabled:
    try:
        from numba import njit, prange

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False


# ---------------------------------------------------------------------------
# pure-numpy implementations (always defined; the benchmark imports these)
# ---------------------------------------------------------------------------

def combine_shifts_np(y, weights, step):
    """Weighted sum over shift pairs: sum_j w_j |y[i+j*step] - y[i-j*step]|^2.

    y is the complex transform on the full circular grid; j runs from 1
    to len(weights).
    """
    est = np.zeros(y.shape[0])
    for j in range(1, weights.shape[0] + 1):
        d = np.roll(y, -j * step) - np.roll(y, j * step)
        est += weights[j - 1] * (d.real * d.real + d.imag * d.imag)
    return est


def _parabolic_norm(k):
    # sum_{j=1..k} (1 - j^2/k^2); zero for k = 1 (degenerate, handled upstream)
    return k - (k + 1.0) * (2.0 * k + 1.0) / (6.0 * k)


def variable_k_combine_np(y, k_profile, step, n1, parabolic):
    """Per-bin taper-count combine of shifted-transform differences.

    ``k_profile[i]`` tapers are averaged at bin i with uniform or
    parabolic weights summing to one; the result carries the

    1/(2*(N+1)) scaling with ``n1 = N + 1``.
    """
    m = y.shape[0]
    kmax = int(k_profile.max())
    c1 = np.zeros(m)
    c2 = np.zeros(m)
    out = np.zeros(m)
    for j in range(1, kmax + 1):
        d = np.roll(y, -j * step) - np.roll(y, j * step)
        p = d.real * d.real + d.imag * d.imag
        c1 += p
        if parabolic:
            c2 += (j * j) * p
        sel = k_profile == j
        if not sel.any():
            continue
        if parabolic and j > 1:
            c = 1.0 / _parabolic_norm(j)
            out[sel] = c * (c1[sel] - c2[sel] / (j * j)) / (2.0 * n1)
        else:
            out[sel] = c1[sel] / (2.0 * n1 * j)
    return out


def smooth_circular_np(values, weights):
    """Circular convolution with a short symmetric weight vector.

    Always the production path: numpy's compiled convolution beats a
    jitted index loop here, so this kernel has no numba build.
    """
    half = (weights.shape[0] - 1) // 2
    ext = np.concatenate([values[-half:], values, values[:half]])
    return np.convolve(ext, weights[::-1], mode="valid")


def _discrete_weights(half_bins, kernel_id):
    j = np.arange(-half_bins, half_bins + 1, dtype=np.float64)
    if kernel_id == KERNEL_BOX:
        raw = np.full(j.shape, 0.5)
    else:
        u = j / half_bins
        raw = 0.75 * (1.0 - u * u)
    return raw / raw.sum()


def smooth_variable_np(values, half_bins, kernel_id):
    """Per-bin circular smoothing with bin-dependent halfwidths.

    ``half_bins[i]`` grid bins on each side of bin i; groups bins that
    share a halfwidth and convolves each group's window once.
    """
    m = values.shape[0]
    out = np.empty(m)
    for hb in np.unique(half_bins):
        sel = half_bins == hb
        wts = _discrete_weights(int(hb), kernel_id)
        pad = np.zeros(m)
        half = int(hb)
        pad[: half + 1] = wts[half:]
        pad[m - half:] = wts[:half]
        sm = np.fft.irfft(np.fft.rfft(values) * np.fft.rfft(pad), m)
        out[sel] = sm[sel]
    return out


def ar_recurse_np(innovations, coeffs):
    """Autoregressive recursion x[i] = e[i] + sum_p a_p x[i-1-p]."""
    n = innovations.shape[0]
    p = coeffs.shape[0]
    x = np.empty(n)
    for i in range(n):
        acc = innovations[i]
        for q in range(min(p, i)):
            acc += coeffs[q] * x[i - 1 - q]
        x[i] = acc
    return x


# ---------------------------------------------------------------------------
# numba builds
# ---------------------------------------------------------------------------

if NUMBA_ENABLED:

    @njit(cache=True, parallel=True)
    def _combine_shifts_nb(y, weights, step):
        m = y.shape[0]
        k = weights.shape[0]
        est = np.empty(m)
        for i in prange(m):
            acc = 0.0
            for j in range(1, k + 1):
                up = y[(i + j * step) % m]
                dn = y[(i - j * step) % m]
                dr = up.real - dn.real
                di = up.imag - dn.imag
                acc += weights[j - 1] * (dr * dr + di * di)
            est[i] = acc
        return est

    @njit(cache=True, parallel=True)
    def _variable_k_combine_nb(y, k_profile, step, n1, parabolic):
        m = y.shape[0]
        out = np.empty(m)
        for i in prange(m):
            k = k_profile[i]
            c1 = 0.0
            c2 = 0.0
            for j in range(1, k + 1):
                up = y[(i + j * step) % m]
                dn = y[(i - j * step) % m]
                dr = up.real - dn.real
                di = up.imag - dn.imag
                p = dr * dr + di * di
                c1 += p
                if parabolic:
                    c2 += (j * j) * p
            if parabolic and k > 1:
                norm = k - (k + 1.0) * (2.0 * k + 1.0) / (6.0 * k)
                out[i] = (c1 - c2 / (k * k)) / norm / (2.0 * n1)
            else:
                out[i] = c1 / (2.0 * n1 * k)
        return out

    @njit(cache=True, parallel=True)
    def _smooth_variable_nb(values, half_bins, kernel_id):
        m = values.shape[0]
        out = np.empty(m)
        for i in prange(m):
            hb = half_bins[i]
            wsum = 0.0
            acc = 0.0
            for j in range(-hb, hb + 1):
                if kernel_id == 0:
                    w = 0.5
                else:
                    u = j / hb
                    w = 0.75 * (1.0 - u * u)
                wsum += w
                acc += w * values[(i + j) % m]
            out[i] = acc / wsum
        return out

    @njit(cache=True)
    def _ar_recurse_nb(innovations, coeffs):
        n = innovations.shape[0]
        p = coeffs.shape[0]
        x = np.empty(n)
        for i in range(n):
            acc = innovations[i]
            top = p if p < i else i
            for q in range(top):
                acc += coeffs[q] * x[i - 1 - q]
            x[i] = acc
        return x


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _c128(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def combine_shifts(y, weights, step):
    y = _c128(y)
    weights = _f64(weights)
    if NUMBA_ENABLED:
        return _combine_shifts_nb(y, weights, int(step))
    return combine_shifts_np(y, weights, int(step))


def variable_k_combine(y, k_profile, step, n1, parabolic):
    y = _c128(y)
    k_profile = np.ascontiguousarray(k_profile, dtype=np.int64)
    if NUMBA_ENABLED:
        return _variable_k_combine_nb(
            y, k_profile, int(step), float(n1), bool(parabolic)
        )
    return variable_k_combine_np(y, k_profile, int(step), float(n1), bool(parabolic))


def smooth_circular(values, weights):
    return smooth_circular_np(_f64(values), _f64(weights))


def smooth_variable(values, half_bins, kernel_id):
    values = _f64(values)
    half_bins = np.ascontiguousarray(half_bins, dtype=np.int64)
    if half_bins.min() < 1:
        raise ValueError("smoothing halfwidth must cover at least one grid bin")
    if NUMBA_ENABLED:
        return _smooth_variable_nb(values, half_bins, int(kernel_id))
    return smooth_variable_np(values, half_bins, int(kernel_id))


def ar_recurse(innovations, coeffs):
    innovations = _f64(innovations)
    coeffs = _f64(coeffs)
    if NUMBA_ENABLED:
        return _ar_recurse_nb(innovations, coeffs)
    return ar_recurse_np(innovations, coeffs)
