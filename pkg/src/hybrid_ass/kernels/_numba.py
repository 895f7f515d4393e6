"""Loop kernels compiled with numba.

All routines take complex128 / uint8 arrays and allocate their own
workspace; no shared state, so they are safe to call from worker threads
(``nogil=True``).
"""

import math

import numpy as np
from numba import njit

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def householder_qr(m):
    n_rows, n_cols = m.shape
    r = m.copy()
    vs = np.zeros((n_cols, n_rows), dtype=np.complex128)
    for j in range(n_cols):
        norm2 = 0.0
        for i in range(j, n_rows):
            norm2 += r[i, j].real ** 2 + r[i, j].imag ** 2
        if norm2 == 0.0:
            continue
        norm = math.sqrt(norm2)
        x0 = r[j, j]
        ax0 = abs(x0)
        phase = x0 / ax0 if ax0 > 0.0 else 1.0 + 0.0j
        for i in range(j, n_rows):
            vs[j, i] = r[i, j]
        vs[j, j] += phase * norm
        vnorm2 = 0.0
        for i in range(j, n_rows):
            vnorm2 += vs[j, i].real ** 2 + vs[j, i].imag ** 2
        vnorm = math.sqrt(vnorm2)
        for i in range(j, n_rows):
            vs[j, i] /= vnorm
        for c in range(j, n_cols):
            dot = 0.0j
            for i in range(j, n_rows):
                dot += vs[j, i].conjugate() * r[i, c]
            for i in range(j, n_rows):
                r[i, c] -= 2.0 * vs[j, i] * dot

    q = np.zeros((n_rows, n_cols), dtype=np.complex128)
    for i in range(n_cols):
        q[i, i] = 1.0
    for j in range(n_cols - 1, -1, -1):
        for c in range(n_cols):
            dot = 0.0j
            for i in range(j, n_rows):
                dot += vs[j, i].conjugate() * q[i, c]
            for i in range(j, n_rows):
                q[i, c] -= 2.0 * vs[j, i] * dot

    rr = np.zeros((n_cols, n_cols), dtype=np.complex128)
    for i in range(n_cols):
        for c in range(i, n_cols):
            rr[i, c] = r[i, c]
    # positive real diagonal
    for j in range(n_cols):
        d = rr[j, j]
        ad = abs(d)
        if ad > 0.0:
            ph = d / ad
            for c in range(j, n_cols):
                rr[j, c] *= ph.conjugate()
            rr[j, j] = ad
            for i in range(n_rows):
                q[i, j] *= ph
    return q, rr


@njit(**_JIT)
def _cholesky(a, lo):
    k = a.shape[0]
    for j in range(k):
        d = a[j, j].real
        for m in range(j):
            d -= lo[j, m].real ** 2 + lo[j, m].imag ** 2
        if not d > 0.0:
            return False
        ljj = math.sqrt(d)
        lo[j, j] = ljj
        for i in range(j + 1, k):
            acc = a[i, j]
            for m in range(j):
                acc -= lo[i, m] * lo[j, m].conjugate()
            lo[i, j] = acc / ljj
        for i in range(j):
            lo[i, j] = 0.0
    return True


@njit(**_JIT)
def _chol_substitute(lo, x):
    # x <- (L L^H)^{-1} x, column by column
    k = lo.shape[0]
    for c in range(x.shape[1]):
        for i in range(k):
            acc = x[i, c]
            for m in range(i):
                acc -= lo[i, m] * x[m, c]
            x[i, c] = acc / lo[i, i].real
        for i in range(k - 1, -1, -1):
            acc = x[i, c]
            for m in range(i + 1, k):
                acc -= lo[m, i].conjugate() * x[m, c]
            x[i, c] = acc / lo[i, i].real


@njit(**_JIT)
def cholesky_solve(a, b):
    k = a.shape[0]
    lo = np.zeros((k, k), dtype=np.complex128)
    x = b.copy()
    if not _cholesky(a, lo):
        return x, False
    _chol_substitute(lo, x)
    return x, True


@njit(**_JIT)
def _he_row(w, s, h, k, he):
    n_rx, n_users = h.shape
    for i in range(n_users):
        he[k, i] = 0.0
    for n in range(n_rx):
        if s[n, k]:
            cw = w[n, k].conjugate()
            for i in range(n_users):
                he[k, i] += cw * h[n, i]


@njit(**_JIT)
def _gram_entry(w, s, k, j):
    acc = 0.0j
    for n in range(w.shape[0]):
        if s[n, k] and s[n, j]:
            acc += w[n, k].conjugate() * w[n, j]
    return acc


@njit(**_JIT)
def _gram_row(w, s, k, g):
    for j in range(g.shape[0]):
        if j >= k:
            g[k, j] = _gram_entry(w, s, k, j)
            g[j, k] = g[k, j].conjugate()
        else:
            g[j, k] = _gram_entry(w, s, j, k)
            g[k, j] = g[j, k].conjugate()


@njit(**_JIT)
def _rate(he, g, snr, a, lo, v):
    """Sum-rate for effective channel ``he`` and analog Gram ``g``."""
    k_users = he.shape[1]
    n_chains = he.shape[0]
    for i in range(k_users):
        for j in range(i, k_users):
            acc = 0.0j
            for c in range(n_chains):
                acc += he[c, i].conjugate() * he[c, j]
            a[i, j] = snr * acc
            if i == j:
                a[i, j] += 1.0
            a[j, i] = a[i, j].conjugate()
    _cholesky(a, lo)  # a >= I, always positive definite
    for i in range(k_users):
        for c in range(n_chains):
            v[i, c] = he[c, i].conjugate()
    _chol_substitute(lo, v)

    total = 0.0
    for k in range(k_users):
        sig = 0.0
        intf = 0.0
        for i in range(k_users):
            t = 0.0j
            for c in range(n_chains):
                t += v[k, c] * he[c, i]
            p2 = t.real ** 2 + t.imag ** 2
            if i == k:
                sig = p2
            else:
                intf += p2
        noise = 0.0
        for x in range(n_chains):
            acc = 0.0j
            for y in range(n_chains):
                acc += g[x, y] * v[k, y].conjugate()
            noise += (v[k, x] * acc).real
        den = snr * intf + noise
        if den > 0.0:
            total += math.log2(1.0 + snr * sig / den)
    return total


@njit(**_JIT)
def batch_sum_rate(w_tilde, s_batch, h, snr):
    n_users = h.shape[1]
    out = np.empty(s_batch.shape[0])
    he = np.empty((n_users, n_users), dtype=np.complex128)
    g = np.empty((n_users, n_users), dtype=np.complex128)
    a = np.empty((n_users, n_users), dtype=np.complex128)
    lo = np.empty((n_users, n_users), dtype=np.complex128)
    v = np.empty((n_users, n_users), dtype=np.complex128)
    for b in range(s_batch.shape[0]):
        s = s_batch[b]
        for k in range(n_users):
            _he_row(w_tilde, s, h, k, he)
        for k in range(n_users):
            for j in range(k, n_users):
                g[k, j] = _gram_entry(w_tilde, s, k, j)
                g[j, k] = g[k, j].conjugate()
        out[b] = _rate(he, g, snr, a, lo, v)
    return out


@njit(**_JIT)
def removal_rates(w_tilde, s, h, snr, cand):
    """Rates after zeroing each ``s[cand[c, 0], cand[c, 1]]`` individually.

    Only the affected effective-channel row and Gram row/column are
    recomputed; each is built exactly as ``batch_sum_rate`` would.
    """
    n_users = h.shape[1]
    base_he = np.empty((n_users, n_users), dtype=np.complex128)
    base_g = np.empty((n_users, n_users), dtype=np.complex128)
    for k in range(n_users):
        _he_row(w_tilde, s, h, k, base_he)
    for k in range(n_users):
        for j in range(k, n_users):
            base_g[k, j] = _gram_entry(w_tilde, s, k, j)
            base_g[j, k] = base_g[k, j].conjugate()

    work = s.copy()
    he = np.empty_like(base_he)
    g = np.empty_like(base_g)
    a = np.empty_like(base_he)
    lo = np.empty_like(base_he)
    v = np.empty_like(base_he)
    out = np.empty(cand.shape[0])
    for c in range(cand.shape[0]):
        n0 = cand[c, 0]
        k0 = cand[c, 1]
        work[n0, k0] = 0
        he[:, :] = base_he
        g[:, :] = base_g
        _he_row(w_tilde, work, h, k0, he)
        _gram_row(w_tilde, work, k0, g)
        out[c] = _rate(he, g, snr, a, lo, v)
        work[n0, k0] = s[n0, k0]
    return out


@njit(**_JIT)
def exhaustive_search(w_tilde, h, snr):
    """Scan every selection with nonempty columns.

    Integer ``m`` encodes the column-major flattened selection with the
    first entry in the most significant bit, so ascending ``m`` is
    lexicographic order and a strict ``>`` keeps the smallest tie.
    """
    n_rx, n_users = h.shape
    n_bits = n_rx * n_users
    n_sub = 1 << n_rx
    sub_mask = n_sub - 1

    # effective-channel row of chain k for every antenna subset u
    table = np.empty((n_users, n_sub, n_users), dtype=np.complex128)
    s1 = np.zeros((n_rx, n_users), dtype=np.uint8)
    he = np.empty((n_users, n_users), dtype=np.complex128)
    for k in range(n_users):
        for u in range(n_sub):
            for n in range(n_rx):
                s1[n, k] = (u >> (n_rx - 1 - n)) & 1
            _he_row(w_tilde, s1, h, k, he)
            for i in range(n_users):
                table[k, u, i] = he[k, i]
        for n in range(n_rx):
            s1[n, k] = 0

    s = np.zeros((n_rx, n_users), dtype=np.uint8)
    best_s = np.ones((n_rx, n_users), dtype=np.uint8)
    g = np.empty((n_users, n_users), dtype=np.complex128)
    a = np.empty_like(g)
    lo = np.empty_like(g)
    v = np.empty_like(g)
    best = -1.0
    count = 0
    for m in range(1 << n_bits):
        feasible = True
        for k in range(n_users):
            if (m >> (n_bits - (k + 1) * n_rx)) & sub_mask == 0:
                feasible = False
                break
        if not feasible:
            continue
        for k in range(n_users):
            u = (m >> (n_bits - (k + 1) * n_rx)) & sub_mask
            for n in range(n_rx):
                s[n, k] = (u >> (n_rx - 1 - n)) & 1
            for i in range(n_users):
                he[k, i] = table[k, u, i]
        for k in range(n_users):
            for j in range(k, n_users):
                g[k, j] = _gram_entry(w_tilde, s, k, j)
                g[j, k] = g[k, j].conjugate()
        rate = _rate(he, g, snr, a, lo, v)
        count += 1
        if rate > best:
            best = rate
            best_s[:, :] = s
    return best_s, best, count
