"""Pure-Python kernels.  ``_kernels.pyx`` mirrors these function by function.

Column encoding for coset tables: generator ``g`` uses column ``2*g`` and its
inverse column ``2*g + 1``, so the inverse of column ``x`` is ``x ^ 1``.
"""

UNDEF = -1


def hlt_enumerate(ncols, relators, subgens, max_cosets):
    """HLT coset enumeration with lookahead.

    ``relators`` and ``subgens`` are lists of column sequences.  Returns the
    standardized coset table as a list of rows, or ``None`` when more than
    ``max_cosets`` cosets would be needed at once.
    """
    table = [[UNDEF] * ncols]
    parent = [0]
    queue = []

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def merge(a, b):
        a, b = rep(a), rep(b)
        if a != b:
            if a > b:
                a, b = b, a
            parent[b] = a
            queue.append(b)

    def coincidence(a, b):
        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(ncols):
                d = row[x]
                if d == UNDEF:
                    continue
                xi = x ^ 1
                if table[d][xi] == g:
                    table[d][xi] = UNDEF
                mu = rep(g)
                nu = rep(d)
                if table[mu][x] != UNDEF:
                    merge(nu, table[mu][x])
                elif table[nu][xi] != UNDEF:
                    merge(mu, table[nu][xi])
                else:
                    table[mu][x] = nu
                    table[nu][xi] = mu
        del queue[:]

    def define(c, x):
        if len(table) >= max_cosets:
            return False
        n = len(table)
        table.append([UNDEF] * ncols)
        parent.append(n)
        table[c][x] = n
        table[n][x ^ 1] = c
        return True

    def scan(a, w, fill):
        """Scan relator ``w`` at coset ``a``.  Returns False if filling ran out of room."""
        f = a
        i = 0
        b = a
        j = len(w) - 1
        while True:
            while i <= j and table[f][w[i]] != UNDEF:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return True
            while j >= i and table[b][w[j] ^ 1] != UNDEF:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return True
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return True
            if not fill:
                return True
            if not define(f, w[i]):
                return False

    def lookahead():
        for c in range(len(table)):
            for w in relators:
                if parent[c] != c:
                    break
                scan(c, w, False)

    def compact(alpha):
        live = [c for c in range(len(table)) if parent[c] == c]
        new = {c: k for k, c in enumerate(live)}
        nalpha = sum(1 for c in live if c < alpha)
        rows = []
        for c in live:
            rows.append([new[d] if d != UNDEF else UNDEF for d in table[c]])
        table[:] = rows
        parent[:] = list(range(len(rows)))
        return nalpha

    for w in subgens:
        if not scan(0, w, True):
            return None

    def make_room(alpha):
        """Lookahead then compact; returns the new alpha, or None if nothing was freed."""
        lookahead()
        before = len(table)
        alpha = compact(alpha)
        return None if len(table) >= before else alpha

    alpha = 0
    while alpha < len(table):
        if parent[alpha] != alpha:
            alpha += 1
            continue
        full = False
        for w in relators:
            if parent[alpha] != alpha:
                break
            if not scan(alpha, w, True):
                full = True
                break
        if not full and parent[alpha] == alpha:
            for x in range(ncols):
                if table[alpha][x] == UNDEF and not define(alpha, x):
                    full = True
                    break
        if full:
            alpha = make_room(alpha)
            if alpha is None:
                return None
            continue
        alpha += 1

    compact(0)
    return _standardize(table, ncols)


def _standardize(table, ncols):
    """Renumber cosets in breadth-first order from coset 0."""
    order = [0]
    seen = {0: 0}
    k = 0
    while k < len(order):
        c = order[k]
        k += 1
        for x in range(ncols):
            d = table[c][x]
            if d not in seen:
                seen[d] = len(order)
                order.append(d)
    return [[seen[table[c][x]] for x in range(ncols)] for c in order]


def bar_boundary(mult, j):
    """Boundary of the normalized bar complex ``C_j -> C_{j-1}`` with trivial coefficients.

    ``mult`` is the multiplication table of a group whose identity is element 0.
    A j-tuple of non-identity elements ``(g1, ..., gj)`` is indexed in base
    ``n - 1`` with digit ``g - 1``, most significant first.  Returns COO lists
    ``(rows, cols, vals)`` with duplicates already summed and zeros dropped.
    """
    n = len(mult)
    m = n - 1
    rows, cols, vals = [], [], []
    if j < 1 or m == 0:
        return rows, cols, vals
    ncols = m ** j
    for col in range(ncols):
        digits = [0] * j
        t = col
        for pos in range(j - 1, -1, -1):
            digits[pos] = t % m + 1
            t //= m
        acc = {}
        # face 0: drop g1
        idx = 0
        for pos in range(1, j):
            idx = idx * m + digits[pos] - 1
        acc[idx] = acc.get(idx, 0) + 1
        # inner faces: multiply neighbours; identity products vanish
        sign = -1
        for i in range(j - 1):
            prod = mult[digits[i]][digits[i + 1]]
            if prod:
                idx = 0
                for pos in range(i):
                    idx = idx * m + digits[pos] - 1
                idx = idx * m + prod - 1
                for pos in range(i + 2, j):
                    idx = idx * m + digits[pos] - 1
                acc[idx] = acc.get(idx, 0) + sign
            sign = -sign
        # last face: drop gj
        idx = 0
        for pos in range(j - 1):
            idx = idx * m + digits[pos] - 1
        acc[idx] = acc.get(idx, 0) + sign
        for idx in sorted(acc):
            v = acc[idx]
            if v:
                rows.append(idx)
                cols.append(col)
                vals.append(v)
    return rows, cols, vals
