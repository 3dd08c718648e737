# Semichu - Verification Suites
#
# Executable audits of the structural theorems: each suite walks a set of
# fixture spaces (or fixture pairs), runs its checks in a fixed order and
# returns a VerificationReport with a witness for every failure.

"""
Verification suites
===================

Suites: chu, classify, tensor-order, tensor-enum, regular, morphism, all.

Single-space suites take a list of semilattices; pair suites take two
(one pair) or fall back to their default fixture pairs. Checks whose
preconditions do not hold on an input are reported as ``skip``.
"""

import logging
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, model_validator

from .chu_effects import (ChuSpace, check_chu_axioms, effect_index_from_row, irreducible_decomposition,
                          natural_effects, pure_effect_decomposition, pure_effect_indices,
                          reduced_effects, state_index_from_column)
from .exceptions import InternalConsistencyError, PreconditionError, SchemaError
from .fixtures import SMALL_FIXTURES, load_fixture, semilattices_up_to
from .fraser_canonical import (_closure_mask, compare_orders, matches_fraser_element,
                               order_isomorphism)
from .lattice_core import (SemiLattice, has_pure_description, is_distributive, is_simplex,
                           non_simplex_witness, validate_star)
from .morphisms import (Morphism, apply_channel_minimal, apply_channel_regular,
                        composition_law_failure, enumerate_morphisms, meet_law_failure)
from .tensor_products import (TensorSpace, TensorTable, minimal_leq_criterion, non_nn_maximal_example,
                              sigma_witness, tensor_space)

logger = logging.getLogger(__name__)

Status = Literal['pass', 'fail', 'skip']


class CheckResult(BaseModel):
    """One executed check"""
    check_id: str
    status: Status
    witness: Optional[str] = None
    detail: Optional[str] = None

    @model_validator(mode='after')
    def _fail_has_witness(self) -> 'CheckResult':
        if self.status == 'fail' and not self.witness:
            raise ValueError(f"failed check {self.check_id} carries no witness")
        return self


class VerificationReport(BaseModel):
    """Ordered check results of a suite run"""
    suite: str
    inputs: List[str] = Field(default_factory=list)
    checks: List[CheckResult] = Field(default_factory=list)
    notes: Dict[str, Any] = Field(default_factory=dict)

    @property
    def counts(self) -> Dict[str, int]:
        counts = {'pass': 0, 'fail': 0, 'skip': 0}
        for check in self.checks:
            counts[check.status] += 1
        return counts

    @property
    def passed(self) -> bool:
        return self.counts['fail'] == 0

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status == 'fail']

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([c.model_dump() for c in self.checks],
                            columns=['check_id', 'status', 'witness', 'detail'])

    def summary(self) -> pd.DataFrame:
        """Per-check-family status counts."""
        frame = self.to_frame()
        if frame.empty:
            return pd.DataFrame(columns=['family', 'pass', 'fail', 'skip'])
        frame['family'] = frame['check_id'].str.split('[').str[0]
        table = frame.pivot_table(index='family', columns='status', values='check_id',
                                  aggfunc='count', fill_value=0)
        return table.reindex(columns=['pass', 'fail', 'skip'], fill_value=0).reset_index()

    def model_dump_result(self) -> Dict[str, Any]:
        data = self.model_dump()
        data['summary'] = self.counts
        data['passed'] = self.passed
        return data


CheckFn = Callable[[], Any]


def _run(check_id: str, fn: CheckFn) -> CheckResult:
    """Execute one check; fn returns a bool or (bool, witness)."""
    try:
        outcome = fn()
    except PreconditionError as e:
        return CheckResult(check_id=check_id, status='skip', detail=str(e))
    except InternalConsistencyError as e:
        return CheckResult(check_id=check_id, status='fail', witness=str(e))
    holds, witness = outcome if isinstance(outcome, tuple) else (outcome, None)
    if holds:
        return CheckResult(check_id=check_id, status='pass')
    return CheckResult(check_id=check_id, status='fail',
                       witness=str(witness) if witness is not None else 'check returned false')


@lru_cache(maxsize=None)
def natural_space(lattice: SemiLattice) -> ChuSpace:
    return natural_effects(lattice)


@lru_cache(maxsize=None)
def reduced_space(lattice: SemiLattice) -> ChuSpace:
    return reduced_effects(lattice)


def _fixtures(names: Sequence[str]) -> List[SemiLattice]:
    return [load_fixture(name) for name in names]


def _fmt_pairs(space: TensorSpace, pairs) -> str:
    return '[' + ','.join(f"({a},{b})" for a, b in space.sorted_pairs(pairs)) + ']'


def _star_ok(lattice: SemiLattice) -> bool:
    return lattice.has_star and validate_star(lattice).valid


# ============================================
# chu
# ============================================

def _reconstruction(chu: ChuSpace) -> Tuple[bool, Optional[str]]:
    for e in range(chu.size):
        if effect_index_from_row(chu, chu.eval_table[e].copy()) != e:
            return False, chu.labels[e]
    for s in range(chu.states.size):
        if state_index_from_column(chu, chu.eval_table[:, s].copy()) != s:
            return False, chu.states.elements[s]
    return True, None


def _effect_generation(chu: ChuSpace) -> Tuple[bool, Optional[str]]:
    """Max ⊆ Irr, and every effect is the meet of its generators above it."""
    irreducible = set(chu.meet_irreducible_effects())
    outside = [chu.labels[p] for p in pure_effect_indices(chu) if p not in irreducible]
    if outside:
        return False, f"maximal but not irreducible: {outside}"
    decompose = pure_effect_decomposition if chu.kind == 'reduced' else irreducible_decomposition
    for effect in chu.effects:
        decompose(chu, effect)
    return True, None


def suite_chu(lattices: Sequence[SemiLattice]) -> List[CheckResult]:
    results = []
    for lattice in lattices:
        spaces = [natural_space(lattice)]
        if _star_ok(lattice):
            spaces.append(reduced_space(lattice))
        for chu in spaces:
            report = check_chu_axioms(chu)
            witness = report.violations[0] if report.violations else None
            results.append(_run(f"chu_axioms[{chu.name}]", lambda r=report, w=witness: (r.passed, w)))
            results.append(_run(f"reconstruction[{chu.name}]", lambda c=chu: _reconstruction(c)))
            if has_pure_description(lattice):
                results.append(_run(f"effect_generation[{chu.name}]", lambda c=chu: _effect_generation(c)))
    return results


# ============================================
# classify
# ============================================

def suite_classify(lattices: Sequence[SemiLattice], notes: Dict[str, Any]) -> List[CheckResult]:
    results = []
    counterexamples, edge_cases = [], []
    witness_mismatch = []
    for lattice in lattices:
        if not has_pure_description(lattice):
            continue
        simplex = is_simplex(lattice).holds
        distributive = is_distributive(lattice)
        if distributive.holds and not simplex:
            counterexamples.append(lattice.name)
        if simplex and not distributive.holds:
            edge_cases.append(lattice.name)
        if (non_simplex_witness(lattice) is None) != simplex:
            witness_mismatch.append(lattice.name)

    names = [lattice.name for lattice in lattices]
    results.append(_run('distributive_implies_simplex',
                        lambda: (not counterexamples, ', '.join(counterexamples))))
    results.append(_run('non_simplex_witness_exists',
                        lambda: (not witness_mismatch, ', '.join(witness_mismatch))))
    if 'BOOL' in names:
        results.append(_run('simplex_not_distributive_reports_BOOL',
                            lambda: ('BOOL' in edge_cases, ', '.join(edge_cases) or 'empty report')))
    for lattice in lattices:
        if lattice.has_star:
            report = validate_star(lattice)
            results.append(_run(f"star_valid[{lattice.name}]",
                                lambda r=report: (r.valid, r.violations[:1])))
    notes['simplex_not_distributive'] = edge_cases
    return results


# ============================================
# tensor-order
# ============================================

def _subsets(items: Sequence, max_size: int):
    for size in range(1, max_size + 1):
        yield from combinations(items, size)


def _order_audit(space: TensorSpace) -> Tuple[Tuple[bool, Optional[str]], Tuple[bool, Optional[str]]]:
    """Criterion vs tables, and Fraser ⇒ minimal, over every U with |U| ≤ 3."""
    la, lb = space.lattice_a, space.lattice_b
    pairs = space.all_pairs()
    targets = [(la.index(a), lb.index(b)) for a, b in pairs]
    criterion_ok: Tuple[bool, Optional[str]] = (True, None)
    implication_ok: Tuple[bool, Optional[str]] = (True, None)
    for subset in _subsets(pairs, 3):
        mask = space.pairs_to_mask(subset)
        table_mask = space._closure_mask_cells(space._omega_mask(mask))
        fraser_mask = _closure_mask(la, lb, mask)
        if criterion_ok[0]:
            for (i, j), target in zip(targets, pairs):
                if minimal_leq_criterion(la, lb, subset, target) != table_mask[i, j]:
                    criterion_ok = (False, f"U={_fmt_pairs(space, subset)} target={target}")
                    break
        if implication_ok[0] and (fraser_mask & ~table_mask).any():
            i, j = np.argwhere(fraser_mask & ~table_mask)[0]
            implication_ok = (False, f"U={_fmt_pairs(space, subset)} target=({la.elements[i]},{lb.elements[j]})")
    return criterion_ok, implication_ok


def _remark_checks(space: TensorSpace) -> List[CheckResult]:
    la, lb = space.lattice_a, space.lattice_b
    atoms_a, atoms_b = la.maximal_elements(), lb.maximal_elements()
    diagonal = list(zip(atoms_a, atoms_b))
    bottom = (la.bottom, lb.bottom)
    results = [_run(f"remark_divergence[{la.name}x{lb.name}]",
                    lambda: (compare_orders(la, lb, diagonal, bottom) == {'fraser': False, 'minimal': True},
                             compare_orders(la, lb, diagonal, bottom)))]
    results.append(_run(f"two_diagonal_pairs[{la.name}x{lb.name}]",
                        lambda: (compare_orders(la, lb, diagonal[:2], bottom) == {'fraser': False, 'minimal': False},
                                 compare_orders(la, lb, diagonal[:2], bottom))))
    return results


def _sup_audit(space: TensorSpace) -> Tuple[bool, Optional[str]]:
    closed = space.enumerate_minimal()
    masks = np.stack([space.pairs_to_mask(c).reshape(-1) for c in closed])
    tables = [space.omega(c) for c in closed]
    for i, j in combinations_with_replacement(range(len(closed)), 2):
        common = masks[i] & masks[j]
        # upper bounds are the members whose closed set fits in the intersection
        inside = ~(masks & ~common).any(axis=1)
        candidates = np.flatnonzero(inside & masks.any(axis=1))
        expected = None
        if len(candidates):
            top = candidates[np.argmax(masks[candidates].sum(axis=1))]
            if (masks[candidates] & ~masks[top]).any():
                return False, f"no least upper bound among members {i}, {j}"
            expected = tables[top]
        result = space.sup_minimal(tables[i], tables[j])
        if result != expected:
            return False, f"sup of {_fmt_pairs(space, closed[i])} and {_fmt_pairs(space, closed[j])}"
    return True, None


def _pure_structure(space: TensorSpace) -> Tuple[bool, Optional[str]]:
    closed = space.enumerate_minimal()
    maxima = [c for c in closed if not any(other < c for other in closed)]
    expected = {space.closed_pairs([pair]) for pair in
                product(space.lattice_a.maximal_elements(), space.lattice_b.maximal_elements())}
    if set(maxima) != expected:
        return False, f"{len(maxima)} maxima, {len(expected)} pure tensors"
    pure_pairs = set(product(space.lattice_a.maximal_elements(), space.lattice_b.maximal_elements()))
    for c in closed:
        above = c & pure_pairs
        if not above or space.omega(above) != space.omega(c):
            return False, _fmt_pairs(space, c)
    return True, None


def suite_tensor_order(pairs: Sequence[Tuple[SemiLattice, SemiLattice]]) -> List[CheckResult]:
    results = []
    for la, lb in pairs:
        space = tensor_space(natural_space(la), natural_space(lb))
        label = f"{la.name}x{lb.name}"
        criterion, implication = _order_audit(space)
        results.append(_run(f"criterion_matches_tables[{label}]", lambda r=criterion: r))
        results.append(_run(f"fraser_implies_minimal[{label}]", lambda r=implication: r))
        if la.name == 'FLAT3' and lb.name == 'FLAT3':
            results.extend(_remark_checks(space))
        if {la.name, lb.name} <= {'CHAIN2', 'FLAT3'} and la.name == lb.name:
            results.append(_run(f"sup_formula[{label}]", lambda s=space: _sup_audit(s)))
        if has_pure_description(la) and has_pure_description(lb):
            results.append(_run(f"pure_tensor_structure[{label}]", lambda s=space: _pure_structure(s)))
    return results


# ============================================
# tensor-enum
# ============================================

def suite_tensor_enum(pairs: Sequence[Tuple[SemiLattice, SemiLattice]]) -> List[CheckResult]:
    results = []
    for la, lb in pairs:
        space = tensor_space(natural_space(la), natural_space(lb))
        label = f"{la.name}x{lb.name}"
        minimal = space.minimal_tables()
        report = order_isomorphism(space)

        if la.name == lb.name == 'CHAIN2':
            results.append(_run('chain2_square_count',
                                lambda m=minimal, r=report: (len(m) == 5 and r.fraser_count == 5,
                                                             f"minimal {len(m)}, fraser {r.fraser_count}")))
        if la.size == lb.size == 1:
            results.append(_run('singleton_square_count', lambda m=minimal: (len(m) == 1, len(m))))

        if is_distributive(la).holds or is_distributive(lb).holds:
            results.append(_run(f"fraser_minimal_isomorphic[{label}]",
                                lambda r=report: (r.isomorphic, r.witness or r.model_dump())))
        else:
            results.append(CheckResult(check_id=f"fraser_minimal_isomorphic[{label}]", status='skip',
                                       detail=f"no literally distributive factor; isomorphic={report.isomorphic}"))

        maximal = space.enumerate_maximal()
        maximal_keys = {t.key() for t in maximal}
        regular_keys = {t.key() for t in maximal if space.satisfies_nn(t) and space.is_regular_member(t)}
        minimal_keys = {t.key() for t in minimal}
        results.append(_run(f"inclusion_chain[{label}]",
                            lambda a=minimal_keys, b=regular_keys, c=maximal_keys: (
                                a <= b <= c, f"minimal {len(a)}, regular {len(b)}, maximal {len(c)}")))
        results.append(_run(f"non_nn_maximal[{label}]", lambda s=space: _non_nn_check(s)))
    return results


def _non_nn_check(space: TensorSpace) -> Tuple[bool, Dict[str, bool]]:
    table = non_nn_maximal_example(space)
    return space.is_maximal_member(table) and not space.satisfies_nn(table), space.classify_table(table)


# ============================================
# regular
# ============================================

def _sigma_checks(space: TensorSpace, enumerate_all: bool) -> List[CheckResult]:
    la, lb = space.lattice_a, space.lattice_b
    atoms_a, atoms_b = la.maximal_elements(), lb.maximal_elements()
    label = f"{la.name}x{lb.name}"
    # second pure state must not lie above the star of the first
    s1 = atoms_a[0]
    s2 = next(x for x in atoms_a if x != s1 and not la.leq(la.star[s1], x))
    t1 = atoms_b[0]
    t2 = next(x for x in atoms_b if x != t1 and not lb.leq(lb.star[t1], x))
    sigma = sigma_witness(space, s1, s2, t1, t2)
    membership = space.classify_table(sigma)
    results = [
        _run(f"sigma_maximal[{label}]", lambda: (membership['maximal'], membership)),
        _run(f"sigma_regular[{label}]", lambda: (membership['regular'], membership)),
        _run(f"sigma_not_minimal[{label}]", lambda: (not membership['minimal'], membership)),
        _run(f"sigma_not_fraser[{label}]", lambda: (not matches_fraser_element(sigma), 'Σ matches a bi-filter')),
    ]
    if enumerate_all:
        regular = {t.key() for t in space.enumerate_regular()}
        results.append(_run(f"sigma_in_regular_enumeration[{label}]",
                            lambda: (sigma.key() in regular, f"{len(regular)} regular tables")))
    return results


def suite_regular(pairs: Sequence[Tuple[SemiLattice, SemiLattice]], exhaustive: bool = True) -> List[CheckResult]:
    results = []
    for la, lb in pairs:
        label = f"{la.name}x{lb.name}"
        if la.name == 'BOOL' or lb.name == 'BOOL':
            space = tensor_space(natural_space(la), natural_space(lb))
            regular = {t.key() for t in space.enumerate_regular()}
            minimal = {t.key() for t in space.minimal_tables()}
            results.append(_run(f"regular_equals_minimal[{label}]",
                                lambda r=regular, m=minimal: (r == m, f"regular {len(r)}, minimal {len(m)}")))
        if _star_ok(la) and _star_ok(lb):
            space = tensor_space(reduced_space(la), reduced_space(lb))
            try:
                both_non_simplex = not is_simplex(la).holds and not is_simplex(lb).holds
            except PreconditionError:
                both_non_simplex = False
            if both_non_simplex:
                results.extend(_sigma_checks(space, enumerate_all=exhaustive))
    return results


# ============================================
# morphism
# ============================================

def suite_morphism(lattices: Sequence[SemiLattice]) -> List[CheckResult]:
    results = []
    spaces = [natural_space(lattice) for lattice in lattices]
    homs: Dict[Tuple[int, int], List[Morphism]] = {}
    for (i, a), (j, b) in product(enumerate(spaces), repeat=2):
        homs[i, j] = enumerate_morphisms(a, b)

    for (i, j), maps in homs.items():
        label = f"{spaces[i].states.name}->{spaces[j].states.name}"
        bad_duality = next((f for f in maps if not f.duality_holds()), None)
        results.append(_run(f"duality[{label}]", lambda f=bad_duality: (f is None, f and f.state_map)))
        bad_surj = next((f for f in maps if f.adjoint_is_surjective() and not f.state_map_is_injective()), None)
        results.append(_run(f"surjective_adjoint_injective[{label}]",
                            lambda f=bad_surj: (f is None, f and f.state_map)))
        bad_meet = None
        for f in maps:
            pos = meet_law_failure(f, maps)
            if pos is not None:
                bad_meet = (f.state_map, maps[pos].state_map)
                break
        results.append(_run(f"meet_law[{label}]", lambda w=bad_meet: (w is None, w)))

    for (i, j) in homs:
        label = f"{spaces[i].states.name}->{spaces[j].states.name}->*"
        bad = None
        for k in range(len(spaces)):
            for f in homs[i, j]:
                pos = composition_law_failure(f, homs[j, k])
                if pos is not None:
                    bad = (f.state_map, homs[j, k][pos].state_map)
                    break
            if bad:
                break
        results.append(_run(f"composition_law[{label}]", lambda w=bad: (w is None, w)))

    results.extend(_channel_checks(lattices, spaces, homs))
    return results


def channel_audit(space: TensorSpace, minimal: Sequence[TensorTable], maximal: Sequence[TensorTable],
                  fs: Sequence[Morphism], gs: Sequence[Morphism]) -> Tuple[bool, Optional[Any]]:
    """
    Channel laws for every f ⊗ g over the members of one tensor space

    Both channels agree on minimal members, the minimal channel commutes
    with every binary meet of minimal members, and the regular channel
    keeps maximal members maximal.
    """
    index = {table.key(): k for k, table in enumerate(minimal)}
    meets = {(a, b): index[space.table_meet([minimal[a], minimal[b]]).key()]
             for a, b in combinations(range(len(minimal)), 2)}
    for f in fs:
        for g in gs:
            images = [apply_channel_minimal(f, g, phi) for phi in minimal]
            for phi, image in zip(minimal, images):
                if image != apply_channel_regular(f, g, phi):
                    return False, ('agree', f.state_map, g.state_map)
            for (a, b), k in meets.items():
                if images[k] != images[a].space.table_meet([images[a], images[b]]):
                    return False, ('meet', f.state_map, g.state_map)
            for phi in maximal:
                image = apply_channel_regular(f, g, phi)
                if not image.space.is_maximal_member(image):
                    return False, ('maximal', f.state_map, g.state_map)
    return True, None


def _channel_checks(lattices: Sequence[SemiLattice], spaces: Sequence[ChuSpace],
                    homs: Dict[Tuple[int, int], List[Morphism]]) -> List[CheckResult]:
    results = []
    small = [i for i, lattice in enumerate(lattices) if lattice.size <= 3]
    for i, j in combinations_with_replacement(small, 2):
        space = tensor_space(spaces[i], spaces[j])
        label = f"{lattices[i].name}x{lattices[j].name}"
        minimal = space.minimal_tables()
        maximal = space.enumerate_maximal()

        def audit(i=i, j=j, space=space, minimal=minimal, maximal=maximal) -> Tuple[bool, Optional[Any]]:
            for i2, j2 in product(small, repeat=2):
                holds, witness = channel_audit(space, minimal, maximal, homs[i, i2], homs[j, j2])
                if not holds:
                    return False, (lattices[i2].name, lattices[j2].name) + witness
            return True, None

        results.append(_run(f"channels[{label}]", audit))
    return results


# ============================================
# Runner
# ============================================

DEFAULT_FIXTURES = ['BOOL', 'CHAIN2', 'CHAIN3', 'FLAT3', 'FLAT4star']
SUITE_NAMES = ['chu', 'classify', 'tensor-order', 'tensor-enum', 'regular', 'morphism']


def _default_pairs(suite: str) -> List[Tuple[str, str]]:
    if suite == 'tensor-order':
        return list(combinations_with_replacement(SMALL_FIXTURES, 2))
    if suite == 'tensor-enum':
        return [('singleton', 'singleton'), ('CHAIN2', 'CHAIN2'), ('CHAIN2', 'FLAT3'),
                ('BOOL', 'BOOL'), ('BOOL', 'FLAT3')]
    return [('BOOL', 'BOOL'), ('BOOL', 'FLAT3'), ('BOOL', 'FLAT4star'), ('FLAT4star', 'FLAT4star')]


def _as_pairs(suite: str, inputs: Optional[Sequence[SemiLattice]]) -> List[Tuple[SemiLattice, SemiLattice]]:
    if not inputs:
        return [(load_fixture(a), load_fixture(b)) for a, b in _default_pairs(suite)]
    if len(inputs) == 1:
        return [(inputs[0], inputs[0])]
    if len(inputs) == 2:
        return [(inputs[0], inputs[1])]
    raise SchemaError(f"suite {suite} takes one or two inputs, got {len(inputs)}")


def run_suite(name: str, inputs: Optional[Sequence[SemiLattice]] = None) -> VerificationReport:
    """
    Run a verification suite

    Args:
        name: One of SUITE_NAMES or 'all'
        inputs: Semilattices to audit (suite defaults when empty)

    Returns:
        VerificationReport with checks in deterministic order
    """
    if name == 'all':
        combined = VerificationReport(suite='all', inputs=[l.name for l in inputs or []])
        for suite in SUITE_NAMES:
            part = run_suite(suite, inputs if suite in ('chu', 'classify', 'morphism') else None)
            combined.checks.extend(part.checks)
            combined.notes.update(part.notes)
        return combined
    if name not in SUITE_NAMES:
        raise SchemaError(f"unknown suite '{name}' (choose from {', '.join(SUITE_NAMES + ['all'])})")

    logger.info(f"Running suite {name}")
    notes: Dict[str, Any] = {}
    if name == 'chu':
        lattices = list(inputs) if inputs else _fixtures(DEFAULT_FIXTURES) + list(semilattices_up_to(5))
        checks = suite_chu(lattices)
    elif name == 'classify':
        lattices = list(inputs) if inputs else _fixtures(DEFAULT_FIXTURES) + list(semilattices_up_to(6))
        checks = suite_classify(lattices, notes)
    elif name == 'morphism':
        lattices = list(inputs) if inputs else _fixtures(SMALL_FIXTURES)
        checks = suite_morphism(lattices)
    else:
        pairs = _as_pairs(name, inputs)
        lattices = [l for pair in pairs for l in pair]
        if name == 'tensor-order':
            checks = suite_tensor_order(pairs)
        elif name == 'tensor-enum':
            checks = suite_tensor_enum(pairs)
        else:
            checks = suite_regular(pairs)

    report = VerificationReport(suite=name, inputs=list(dict.fromkeys(l.name for l in lattices)),
                                checks=checks, notes=notes)
    counts = report.counts
    logger.info(f"Suite {name}: {counts['pass']} pass, {counts['fail']} fail, {counts['skip']} skip")
    return report
