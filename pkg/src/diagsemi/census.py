"""Subsemigroup census of a small enumerated semigroup.

Subsets are bitmasks over element indices.  The search grows closed
sets by adjoining one element at a time and re-closing: a state is a
closed mask plus the lowest index it still has to try, and a mask is
re-expanded only for index windows nobody has tried yet.  Every closed
subset (the empty one included) is produced exactly once; a 2^N subset
scan doubles as the completeness oracle in the tests.

Deduplication to conjugacy classes maps every mask through the ambient
symmetry group (the point permutations fixing the element set) and
keeps the minimal image, where masks compare as plain integers with
element i at bit i.
"""

import json
import multiprocessing
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .elements import PointPermutation, conjugate, is_nontrivial_permutation
from .engine import EnumeratedSemigroup
from .kernels import get_backend


class FeasibilityError(RuntimeError):
    """The requested census exceeds the configured bounds; no partial
    counts are ever reported."""


DEFAULT_MAX_ELEMENTS = 64


class SymmetryGroup:
    """Point permutations whose conjugation action fixes the ambient
    element set, together with the induced element-index permutations."""

    def __init__(self, perms, index_perms):
        self.perms = perms
        self.index_perms = index_perms  # int32 array |G| x N

    def __len__(self):
        return len(self.perms)


def symmetry_group(S: EnumeratedSemigroup, max_degree=8) -> SymmetryGroup:
    n = S.degree
    if n is None:
        raise ValueError("ambient semigroup has no diagram degree")
    if n > max_degree:
        raise FeasibilityError(
            f"symmetry filtering over S_{n} refused (bound {max_degree})"
        )
    kept, rows = [], []
    for image in permutations(range(n)):
        sigma = PointPermutation(image)
        row = np.empty(len(S), dtype=np.int32)
        ok = True
        for i, x in enumerate(S.elements):
            j = S.index.get(conjugate(x, sigma))
            if j is None:
                ok = False
                break
            row[i] = j
        if ok:
            kept.append(sigma)
            rows.append(row)
    return SymmetryGroup(kept, np.vstack(rows))


def all_subsemigroup_masks(S, backend=None, max_elements=None):
    """Every product-closed subset of S, as a sorted list of bitmasks."""
    n = len(S)
    bound = DEFAULT_MAX_ELEMENTS if max_elements is None else max_elements
    if n > bound:
        raise FeasibilityError(
            f"ambient has {n} elements, over the census bound of {bound}; "
            "raise DIAGSEMI_MAX_ELEMENTS to run anyway"
        )
    backend = backend or get_backend(width=n)
    table = S.multiplication_table()

    seen = {0}
    expanded_lo = {}  # mask -> lowest start of an extension window already run
    work = [(0, 0)]
    while work:
        mask, lo = work.pop()
        hi = expanded_lo.get(mask, n)
        if lo >= hi:
            continue  # a state with a lower bound got here first
        expanded_lo[mask] = lo
        for e, closed in backend.extend_window(table, mask, lo, hi):
            seen.add(closed)
            if e + 1 < expanded_lo.get(closed, n):
                work.append((closed, e + 1))
    return sorted(seen)


def all_subsemigroups(S, mode="count", backend=None, max_elements=None):
    """Count or stream all subsemigroups (the empty set included)."""
    masks = all_subsemigroup_masks(S, backend=backend, max_elements=max_elements)
    if mode == "count":
        return len(masks)
    if mode == "stream":
        return iter(masks)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class CensusRecord:
    mask: int  # representative: minimal image over the symmetry group
    orbit_size: int
    size: int
    d_classes: int
    idempotents: int
    has_nontrivial_perm: bool

    def to_json(self):
        return {
            "representative_mask_hex": hex(self.mask),
            "orbit_size": self.orbit_size,
            "size": self.size,
            "d_classes": self.d_classes,
            "idempotents": self.idempotents,
            "has_nontrivial_perm": self.has_nontrivial_perm,
        }


_POOL_STATE = {}


def _stats_worker(args):
    mask, orbit = args
    table = _POOL_STATE["table"]
    backend = _POOL_STATE["backend"]
    perm_bits = _POOL_STATE["perm_bits"]
    return _make_record(table, backend, perm_bits, mask, orbit)


def _make_record(table, backend, perm_bits, mask, orbit):
    return CensusRecord(
        mask=mask,
        orbit_size=orbit,
        size=bin(mask).count("1"),
        d_classes=backend.count_dclasses(table, mask),
        idempotents=backend.count_idempotents(table, mask),
        has_nontrivial_perm=bool(mask & perm_bits),
    )


def census_up_to_conjugacy(S, G=None, backend=None, max_elements=None, jobs=1):
    """One record per conjugacy class of subsemigroups, ordered by
    representative mask; returns (records, raw_total)."""
    backend = backend or get_backend(width=len(S))
    if G is None:
        G = symmetry_group(S)
    masks = all_subsemigroup_masks(S, backend=backend, max_elements=max_elements)

    groups = {}
    for m in masks:
        rep, orbit = backend.min_image(m, G.index_perms)
        groups.setdefault(rep, [orbit, 0])
        groups[rep][1] += 1
    for rep, (orbit, n_in_orbit) in groups.items():
        if orbit != n_in_orbit:
            raise AssertionError(
                f"orbit of {rep:#x} has {orbit} images but {n_in_orbit} members"
            )

    perm_bits = 0
    for i, x in enumerate(S.elements):
        if is_nontrivial_permutation(x):
            perm_bits |= 1 << i

    table = S.multiplication_table()
    items = sorted((rep, orbit) for rep, (orbit, _) in groups.items())
    if jobs > 1 and len(items) > 256:
        _POOL_STATE.update(table=table, backend=backend, perm_bits=perm_bits)
        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            records = pool.map(_stats_worker, items, chunksize=512)
    else:
        records = [_make_record(table, backend, perm_bits, m, o) for m, o in items]
    assert sum(r.orbit_size for r in records) == len(masks)
    return records, len(masks)


def subgroup_census(S, G=None, backend=None, jobs=1):
    """Conjugacy classes of subgroups of a group ambient.

    Every nonempty closed subset of a finite group is a subgroup, so
    this is the subsemigroup census with the empty set dropped (the one
    row of the published table that excludes it)."""
    table = S.multiplication_table()
    n = len(S)
    inverse_ok = all(any(int(table[x, y]) == 0 and int(table[y, x]) == 0
                         for y in range(n)) for x in range(n))
    if not inverse_ok:
        raise ValueError("ambient is not a group")
    records, _ = census_up_to_conjugacy(S, G=G, backend=backend, jobs=jobs)
    nonempty = [r for r in records if r.size > 0]
    for r in nonempty:
        if not r.mask & 1:
            raise AssertionError("subgroup without the ambient identity")
    return len(nonempty)


# ---------------------------------------------------------------------------
# statistics and file formats


def size_histogram(records, only_nontrivial_perm=False):
    out = {}
    for r in records:
        if only_nontrivial_perm and not r.has_nontrivial_perm:
            continue
        out[r.size] = out.get(r.size, 0) + 1
    return dict(sorted(out.items()))


def joint_histogram(records, metric):
    key = {"d-classes": "d_classes", "idempotents": "idempotents"}.get(metric)
    if key is None:
        raise ValueError(f"unknown metric {metric!r}")
    out = {}
    for r in records:
        k = (r.size, getattr(r, key))
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))


def write_histogram_csv(path, hist, config=""):
    with open(path, "w") as fh:
        if config:
            fh.write(f"# {config}\n")
        fh.write("size,count\n")
        for size, count in hist.items():
            fh.write(f"{size},{count}\n")


def write_joint_csv(path, joint, metric, config=""):
    with open(path, "w") as fh:
        if config:
            fh.write(f"# {config}\n")
        fh.write(f"size,{metric},count\n")
        for (size, value), count in joint.items():
            fh.write(f"{size},{value},{count}\n")


def write_records_jsonl(path, records, config=None):
    with open(path, "w") as fh:
        if config is not None:
            fh.write(json.dumps({"config": config}) + "\n")
        for r in records:
            fh.write(json.dumps(r.to_json()) + "\n")
