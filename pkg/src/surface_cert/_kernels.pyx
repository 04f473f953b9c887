# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_kernels_py``."""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy


cdef struct Table:
    int ncols
    int n           # allocated cosets
    int cap
    int max_cosets
    int *tab        # n * ncols entries, -1 = undefined
    int *parent
    int *queue
    int qlen


cdef int tab_grow(Table *t) nogil:
    cdef int newcap
    cdef int *nt
    cdef int *np_
    cdef int *nq
    if t.n < t.cap:
        return 1
    newcap = t.cap * 2
    if newcap > t.max_cosets:
        newcap = t.max_cosets
    nt = <int *>realloc(t.tab, <size_t>newcap * t.ncols * sizeof(int))
    if nt == NULL:
        return 0
    t.tab = nt
    np_ = <int *>realloc(t.parent, <size_t>newcap * sizeof(int))
    if np_ == NULL:
        return 0
    t.parent = np_
    nq = <int *>realloc(t.queue, <size_t>newcap * sizeof(int))
    if nq == NULL:
        return 0
    t.queue = nq
    t.cap = newcap
    return 1


cdef inline int rep(Table *t, int c) nogil:
    cdef int r = c
    cdef int nxt
    while t.parent[r] != r:
        r = t.parent[r]
    while t.parent[c] != r:
        nxt = t.parent[c]
        t.parent[c] = r
        c = nxt
    return r


cdef inline void merge(Table *t, int a, int b) nogil:
    cdef int tmp
    a = rep(t, a)
    b = rep(t, b)
    if a != b:
        if a > b:
            tmp = a
            a = b
            b = tmp
        t.parent[b] = a
        t.queue[t.qlen] = b
        t.qlen += 1


cdef void coincidence(Table *t, int a, int b) nogil:
    cdef int i = 0
    cdef int g, x, d, xi, mu, nu
    cdef int nc = t.ncols
    cdef int *tab = t.tab
    merge(t, a, b)
    while i < t.qlen:
        g = t.queue[i]
        i += 1
        for x in range(nc):
            d = tab[g * nc + x]
            if d < 0:
                continue
            xi = x ^ 1
            if tab[d * nc + xi] == g:
                tab[d * nc + xi] = -1
            mu = rep(t, g)
            nu = rep(t, d)
            if tab[mu * nc + x] >= 0:
                merge(t, nu, tab[mu * nc + x])
            elif tab[nu * nc + xi] >= 0:
                merge(t, mu, tab[nu * nc + xi])
            else:
                tab[mu * nc + x] = nu
                tab[nu * nc + xi] = mu
    t.qlen = 0


cdef int define(Table *t, int c, int x) nogil:
    cdef int k, n
    if t.n >= t.max_cosets:
        return 0
    if not tab_grow(t):
        return 0
    n = t.n
    for k in range(t.ncols):
        t.tab[n * t.ncols + k] = -1
    t.parent[n] = n
    t.n += 1
    t.tab[c * t.ncols + x] = n
    t.tab[n * t.ncols + (x ^ 1)] = c
    return 1


cdef int scan(Table *t, int a, int *w, int wlen, int fill) nogil:
    cdef int f = a
    cdef int b = a
    cdef int i = 0
    cdef int j = wlen - 1
    cdef int nc = t.ncols
    while True:
        while i <= j and t.tab[f * nc + w[i]] >= 0:
            f = t.tab[f * nc + w[i]]
            i += 1
        if i > j:
            if f != b:
                coincidence(t, f, b)
            return 1
        while j >= i and t.tab[b * nc + (w[j] ^ 1)] >= 0:
            b = t.tab[b * nc + (w[j] ^ 1)]
            j -= 1
        if j < i:
            coincidence(t, f, b)
            return 1
        if i == j:
            t.tab[f * nc + w[i]] = b
            t.tab[b * nc + (w[i] ^ 1)] = f
            return 1
        if not fill:
            return 1
        if not define(t, f, w[i]):
            return 0


cdef void lookahead(Table *t, int nrel, int **rels, int *rlens) nogil:
    cdef int c, r
    for c in range(t.n):
        for r in range(nrel):
            if t.parent[c] != c:
                break
            scan(t, c, rels[r], rlens[r], 0)


cdef int compact(Table *t, int alpha) nogil:
    """Renumber live cosets in order; returns the new alpha."""
    cdef int c, k, d, x
    cdef int nc = t.ncols
    cdef int nalpha = 0
    cdef int live = 0
    # queue doubles as the old -> new map
    for c in range(t.n):
        if t.parent[c] == c:
            t.queue[c] = live
            if c < alpha:
                nalpha += 1
            live += 1
        else:
            t.queue[c] = -1
    for c in range(t.n):
        if t.parent[c] == c:
            k = t.queue[c]
            for x in range(nc):
                d = t.tab[c * nc + x]
                t.tab[k * nc + x] = t.queue[d] if d >= 0 else -1
    t.n = live
    for c in range(live):
        t.parent[c] = c
    t.qlen = 0
    return nalpha


def hlt_enumerate(int ncols, relators, subgens, int max_cosets):
    """HLT coset enumeration with lookahead; see ``_kernels_py.hlt_enumerate``."""
    cdef Table t
    cdef int nrel = len(relators)
    cdef int nsub = len(subgens)
    cdef int **rels = <int **>malloc((nrel + nsub + 1) * sizeof(int *))
    cdef int *rlens = <int *>malloc((nrel + nsub + 1) * sizeof(int))
    cdef int r, k, alpha, full, x, before
    cdef bint ok = True
    for r, w in enumerate(list(relators) + list(subgens)):
        rlens[r] = len(w)
        rels[r] = <int *>malloc((len(w) + 1) * sizeof(int))
        for k in range(len(w)):
            rels[r][k] = w[k]
    t.ncols = ncols
    t.cap = 1024 if max_cosets > 1024 else max_cosets
    t.max_cosets = max_cosets
    t.tab = <int *>malloc(<size_t>t.cap * ncols * sizeof(int))
    t.parent = <int *>malloc(<size_t>t.cap * sizeof(int))
    t.queue = <int *>malloc(<size_t>t.cap * sizeof(int))
    t.qlen = 0
    t.n = 1
    t.parent[0] = 0
    for k in range(ncols):
        t.tab[k] = -1
    try:
        with nogil:
            for r in range(nsub):
                if not scan(&t, 0, rels[nrel + r], rlens[nrel + r], 1):
                    ok = False
                    break
            alpha = 0
            while ok and alpha < t.n:
                if t.parent[alpha] != alpha:
                    alpha += 1
                    continue
                full = 0
                for r in range(nrel):
                    if t.parent[alpha] != alpha:
                        break
                    if not scan(&t, alpha, rels[r], rlens[r], 1):
                        full = 1
                        break
                if not full and t.parent[alpha] == alpha:
                    for x in range(ncols):
                        if t.tab[alpha * ncols + x] < 0 and not define(&t, alpha, x):
                            full = 1
                            break
                if full:
                    lookahead(&t, nrel, rels, rlens)
                    before = t.n
                    alpha = compact(&t, alpha)
                    if t.n >= before:
                        ok = False
                    continue
                alpha += 1
            if ok:
                compact(&t, 0)
        if not ok:
            return None
        rows = [[t.tab[c * ncols + x] for x in range(ncols)] for c in range(t.n)]
    finally:
        for r in range(nrel + nsub):
            free(rels[r])
        free(rels)
        free(rlens)
        free(t.tab)
        free(t.parent)
        free(t.queue)
    return _standardize(rows, ncols)


def _standardize(table, int ncols):
    order = [0]
    seen = {0: 0}
    cdef Py_ssize_t k = 0
    while k < len(order):
        c = order[k]
        k += 1
        for x in range(ncols):
            d = table[c][x]
            if d not in seen:
                seen[d] = len(order)
                order.append(d)
    return [[seen[table[c][x]] for x in range(ncols)] for c in order]


def bar_boundary(mult, int j):
    """Normalized bar boundary; see ``_kernels_py.bar_boundary``."""
    cdef int n = len(mult)
    cdef int m = n - 1
    cdef long long ncols, col, t, idx, base_idx
    cdef int i, pos, prod, sign, nterms, a, b
    cdef int *mt
    cdef int digits[16]
    cdef long long term_idx[18]
    cdef int term_val[18]
    rows, cols, vals = [], [], []
    if j < 1 or m == 0:
        return rows, cols, vals
    if j > 16:
        raise ValueError("bar degree too large")
    mt = <int *>malloc(n * n * sizeof(int))
    for a in range(n):
        for b in range(n):
            mt[a * n + b] = mult[a][b]
    ncols = 1
    for i in range(j):
        ncols *= m
    try:
        for col in range(ncols):
            t = col
            for pos in range(j - 1, -1, -1):
                digits[pos] = <int>(t % m) + 1
                t //= m
            nterms = 0
            idx = 0
            for pos in range(1, j):
                idx = idx * m + digits[pos] - 1
            term_idx[nterms] = idx
            term_val[nterms] = 1
            nterms += 1
            sign = -1
            for i in range(j - 1):
                prod = mt[digits[i] * n + digits[i + 1]]
                if prod:
                    idx = 0
                    for pos in range(i):
                        idx = idx * m + digits[pos] - 1
                    idx = idx * m + prod - 1
                    for pos in range(i + 2, j):
                        idx = idx * m + digits[pos] - 1
                    term_idx[nterms] = idx
                    term_val[nterms] = sign
                    nterms += 1
                sign = -sign
            idx = 0
            for pos in range(j - 1):
                idx = idx * m + digits[pos] - 1
            term_idx[nterms] = idx
            term_val[nterms] = sign
            nterms += 1
            # merge duplicates; insertion sort on at most j + 1 terms
            for a in range(1, nterms):
                base_idx = term_idx[a]
                prod = term_val[a]
                b = a - 1
                while b >= 0 and term_idx[b] > base_idx:
                    term_idx[b + 1] = term_idx[b]
                    term_val[b + 1] = term_val[b]
                    b -= 1
                term_idx[b + 1] = base_idx
                term_val[b + 1] = prod
            a = 0
            while a < nterms:
                base_idx = term_idx[a]
                prod = 0
                while a < nterms and term_idx[a] == base_idx:
                    prod += term_val[a]
                    a += 1
                if prod:
                    rows.append(base_idx)
                    cols.append(col)
                    vals.append(prod)
    finally:
        free(mt)
    return rows, cols, vals
