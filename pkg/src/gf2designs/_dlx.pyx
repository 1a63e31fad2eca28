# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dancing-links kernel.

Same algorithm, column heuristic, row order, and node accounting as the
pure-Python twin; the links live in malloc'd int arrays instead of
lists.  Node counts from the two backends are identical by design.
"""

from libc.stdlib cimport free, malloc

import time

BACKEND = "c"

EXHAUSTED = 0
LIMIT = 1
TIMED_OUT = 2


def solve(n_cols, rows, constraints, max_solutions, deadline, first_fit):
    """Run exhaustive Algorithm X; returns (status, solutions, nodes).

    rows: sequence of nonempty, strictly ascending column-index tuples.
    constraints: sequence of (row-id tuple, exact target) pairs.
    deadline: time.monotonic() deadline, negative for none.
    first_fit: pick the first active column instead of the smallest.
    """
    cdef int ncols = n_cols
    cdef int nh = ncols + 1
    cdef int nrows = len(rows)
    cdef long long maxsol = max_solutions
    cdef double dl = deadline
    cdef bint ffit = bool(first_fit)

    cdef long long nnz = 0
    for cols in rows:
        nnz += len(cols)

    cdef int nnodes = nh + <int> nnz
    cdef int *left = <int *> malloc(nnodes * sizeof(int))
    cdef int *right = <int *> malloc(nnodes * sizeof(int))
    cdef int *up = <int *> malloc(nnodes * sizeof(int))
    cdef int *down = <int *> malloc(nnodes * sizeof(int))
    cdef int *colof = <int *> malloc(nnodes * sizeof(int))
    cdef int *rowof = <int *> malloc(nnodes * sizeof(int))
    cdef int *size = <int *> malloc(nh * sizeof(int))

    cdef int ncons = len(constraints)
    cdef long long nmember = 0
    for members, _ in constraints:
        nmember += len(members)
    cdef int *target = <int *> malloc((ncons + 1) * sizeof(int))
    cdef int *selected = <int *> malloc((ncons + 1) * sizeof(int))
    cdef int *alive = <int *> malloc((ncons + 1) * sizeof(int))
    # CSR map from row id to the ids of the constraints that contain it
    cdef int *cstart = <int *> malloc((nrows + 1) * sizeof(int))
    cdef int *cidx = <int *> malloc((nmember + 1) * sizeof(int))
    # explicit stacks: depth is at most one per covered column
    cdef int *stack_h = <int *> malloc(nh * sizeof(int))
    cdef int *stack_n = <int *> malloc(nh * sizeof(int))
    cdef int *sel_rows = <int *> malloc(nh * sizeof(int))

    if (
        left == NULL or right == NULL or up == NULL or down == NULL
        or colof == NULL or rowof == NULL or size == NULL or target == NULL
        or selected == NULL or alive == NULL or cstart == NULL
        or cidx == NULL or stack_h == NULL or stack_n == NULL
        or sel_rows == NULL
    ):
        free(left); free(right); free(up); free(down); free(colof)
        free(rowof); free(size); free(target); free(selected); free(alive)
        free(cstart); free(cidx); free(stack_h); free(stack_n); free(sel_rows)
        raise MemoryError()

    cdef int h, node, first, last, rid, c, k, i, j, r
    cdef int best, bsize
    cdef int nviol = 0
    cdef int s, a, t
    cdef bint before, after
    cdef int depth = 0
    cdef long long nodes = 0
    cdef int status = EXHAUSTED
    cdef int mode = 0
    cdef int kk

    solutions = []

    try:
        for h in range(nh):
            left[h] = h - 1 if h else nh - 1
            right[h] = h + 1 if h + 1 < nh else 0
            up[h] = h
            down[h] = h
            colof[h] = h
            rowof[h] = -1
            size[h] = 0

        node = nh
        for rid in range(nrows):
            first = -1
            for col in rows[rid]:
                c = col
                h = c + 1
                up[node] = up[h]
                down[node] = h
                down[up[h]] = node
                up[h] = node
                colof[node] = h
                rowof[node] = rid
                size[h] += 1
                if first < 0:
                    left[node] = node
                    right[node] = node
                    first = node
                else:
                    last = left[first]
                    left[node] = last
                    right[node] = first
                    right[last] = node
                    left[first] = node
                node += 1

        for k in range(ncons):
            target[k] = constraints[k][1]
            selected[k] = 0
            alive[k] = 0
        for rid in range(nrows + 1):
            cstart[rid] = 0
        for k in range(ncons):
            for rr in constraints[k][0]:
                rid = rr
                cstart[rid + 1] += 1
                alive[k] += 1
        for rid in range(nrows):
            cstart[rid + 1] += cstart[rid]
        # fill with a scratch cursor array, then restore the offsets
        cursor = [cstart[rid] for rid in range(nrows)]
        for k in range(ncons):
            for rr in constraints[k][0]:
                rid = rr
                cidx[cursor[rid]] = k
                cursor[rid] += 1

        for k in range(ncons):
            if selected[k] > target[k] or selected[k] + alive[k] < target[k]:
                nviol += 1

        h = 0
        node = 0
        while True:
            if mode == 0:
                if nviol:
                    mode = 2
                    continue
                if right[0] == 0:
                    sol = []
                    for i in range(depth):
                        sol.append(sel_rows[i])
                    sol.sort()
                    solutions.append(sol)
                    if len(solutions) >= maxsol:
                        status = LIMIT
                        break
                    mode = 2
                    continue
                # choose the column: first active, or smallest with lowest index
                best = right[0]
                if not ffit:
                    bsize = size[best]
                    c = right[best]
                    while c != 0:
                        if size[c] < bsize:
                            best = c
                            bsize = size[c]
                        c = right[c]
                h = best
                # cover h
                right[left[h]] = right[h]
                left[right[h]] = left[h]
                i = down[h]
                while i != h:
                    j = right[i]
                    while j != i:
                        up[down[j]] = up[j]
                        down[up[j]] = down[j]
                        size[colof[j]] -= 1
                        j = right[j]
                    r = rowof[i]
                    for kk in range(cstart[r], cstart[r + 1]):
                        k = cidx[kk]
                        t = target[k]
                        s = selected[k]
                        a = alive[k]
                        before = s > t or s + a < t
                        a -= 1
                        alive[k] = a
                        after = s > t or s + a < t
                        if after != before:
                            nviol += 1 if after else -1
                    i = down[i]
                node = down[h]
                mode = 1
            elif mode == 1:
                if node == h:
                    # uncover h
                    i = up[h]
                    while i != h:
                        r = rowof[i]
                        for kk in range(cstart[r], cstart[r + 1]):
                            k = cidx[kk]
                            t = target[k]
                            s = selected[k]
                            a = alive[k]
                            before = s > t or s + a < t
                            a += 1
                            alive[k] = a
                            after = s > t or s + a < t
                            if after != before:
                                nviol += 1 if after else -1
                        j = left[i]
                        while j != i:
                            size[colof[j]] += 1
                            up[down[j]] = j
                            down[up[j]] = j
                            j = left[j]
                        i = up[i]
                    right[left[h]] = h
                    left[right[h]] = h
                    mode = 2
                    continue
                nodes += 1
                if (
                    (nodes & 0xFFFF) == 0
                    and dl >= 0
                    and time.monotonic() >= dl
                ):
                    status = TIMED_OUT
                    break
                r = rowof[node]
                for kk in range(cstart[r], cstart[r + 1]):
                    k = cidx[kk]
                    t = target[k]
                    s = selected[k]
                    before = s > t or s + alive[k] < t
                    s += 1
                    selected[k] = s
                    after = s > t or s + alive[k] < t
                    if after != before:
                        nviol += 1 if after else -1
                sel_rows[depth] = r
                j = right[node]
                while j != node:
                    # cover colof[j]
                    c = colof[j]
                    right[left[c]] = right[c]
                    left[right[c]] = left[c]
                    i = down[c]
                    while i != c:
                        kk = right[i]
                        while kk != i:
                            up[down[kk]] = up[kk]
                            down[up[kk]] = down[kk]
                            size[colof[kk]] -= 1
                            kk = right[kk]
                        r = rowof[i]
                        for kk in range(cstart[r], cstart[r + 1]):
                            k = cidx[kk]
                            t = target[k]
                            s = selected[k]
                            a = alive[k]
                            before = s > t or s + a < t
                            a -= 1
                            alive[k] = a
                            after = s > t or s + a < t
                            if after != before:
                                nviol += 1 if after else -1
                        i = down[i]
                    j = right[j]
                stack_h[depth] = h
                stack_n[depth] = node
                depth += 1
                mode = 0
            else:
                if depth == 0:
                    break
                depth -= 1
                h = stack_h[depth]
                node = stack_n[depth]
                j = left[node]
                while j != node:
                    # uncover colof[j]
                    c = colof[j]
                    i = up[c]
                    while i != c:
                        r = rowof[i]
                        for kk in range(cstart[r], cstart[r + 1]):
                            k = cidx[kk]
                            t = target[k]
                            s = selected[k]
                            a = alive[k]
                            before = s > t or s + a < t
                            a += 1
                            alive[k] = a
                            after = s > t or s + a < t
                            if after != before:
                                nviol += 1 if after else -1
                        kk = left[i]
                        while kk != i:
                            size[colof[kk]] += 1
                            up[down[kk]] = kk
                            down[up[kk]] = kk
                            kk = left[kk]
                        i = up[i]
                    right[left[c]] = c
                    left[right[c]] = c
                    j = left[j]
                r = rowof[node]
                for kk in range(cstart[r], cstart[r + 1]):
                    k = cidx[kk]
                    t = target[k]
                    s = selected[k]
                    before = s > t or s + alive[k] < t
                    s -= 1
                    selected[k] = s
                    after = s > t or s + alive[k] < t
                    if after != before:
                        nviol += 1 if after else -1
                node = down[node]
                mode = 1
        return status, solutions, <object> nodes
    finally:
        free(left); free(right); free(up); free(down); free(colof)
        free(rowof); free(size); free(target); free(selected); free(alive)
        free(cstart); free(cidx); free(stack_h); free(stack_n); free(sel_rows)
