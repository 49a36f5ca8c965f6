"""Schedule synthesis and execution for fusion-built graph states.

Three planners live here. plan_tree_protocol emits the doubling
schedule that builds a caterpillar tree out of Bell pairs, measuring
every qubit as soon as no later gate touches it. plan_join_sequence
decides exactly which trees the inter-graph fusion rule can reach and
reconstructs a gate sequence when one exists. brute_force_schedule_search
is the independent oracle: a breadth-first sweep over all schedules on
at most eight qubits, either on labeled graphs (inter-graph gates only)
or on canonical stabilizer groups (when intra-graph gates or extra
Hadamards are allowed).

execute_schedule runs any schedule through the stabilizer engine and
reports the cumulative postselection probability; execute_schedule_fock
does the same in second quantization for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Union

from .fock import FockState, make_bell_pair, tensor
from .graphs import Graph, apply_pbs_gate, graph_to_stabilizers, stabilizers_to_graph
from .pauli import PauliString, StabilizerGroup


@dataclass(frozen=True)
class CreatePair:
    """Emit a fresh two-qubit graph state (one edge) on new qubit ids."""

    q_a: int
    q_b: int


@dataclass(frozen=True)
class PbsGate:
    """Fusion gate: polarizing beam splitter on (i1, i2) followed by a
    half-wave plate Hadamard on i2, postselected on one photon per port."""

    i1: int
    i2: int


@dataclass(frozen=True)
class Hadamard:
    q: int


@dataclass(frozen=True)
class Measure:
    """Bookkeeping marker: the qubit leaves the active register here."""

    q: int


Instruction = Union[CreatePair, PbsGate, Hadamard, Measure]


@dataclass(frozen=True)
class Schedule:
    instructions: tuple[Instruction, ...]
    target: Graph | None = None
    levels: int | None = None

    def gate_count(self) -> int:
        return sum(1 for ins in self.instructions if isinstance(ins, PbsGate))

    def pair_count(self) -> int:
        return sum(1 for ins in self.instructions if isinstance(ins, CreatePair))

    def qubit_ids(self) -> tuple[int, ...]:
        ids = []
        for ins in self.instructions:
            if isinstance(ins, CreatePair):
                ids.extend((ins.q_a, ins.q_b))
        return tuple(sorted(ids))


def validate_schedule(sched: Schedule) -> None:
    """Raise ValueError unless the schedule is well formed: pair ids are
    fresh, gates and measurements touch live (created, unmeasured)
    qubits, and gate endpoints are distinct."""
    created: set[int] = set()
    measured: set[int] = set()

    def live(q: int, what: str) -> None:
        if q not in created:
            raise ValueError(f"{what} references qubit {q} before it is created")
        if q in measured:
            raise ValueError(f"{what} references qubit {q} after it is measured")

    for ins in sched.instructions:
        if isinstance(ins, CreatePair):
            for q in (ins.q_a, ins.q_b):
                if q < 0:
                    raise ValueError(f"negative qubit id {q}")
                if q in created:
                    raise ValueError(f"qubit id {q} created twice")
            if ins.q_a == ins.q_b:
                raise ValueError("pair endpoints must differ")
            created.update((ins.q_a, ins.q_b))
        elif isinstance(ins, PbsGate):
            if ins.i1 == ins.i2:
                raise ValueError("gate endpoints must differ")
            live(ins.i1, "PBS")
            live(ins.i2, "PBS")
        elif isinstance(ins, Hadamard):
            live(ins.q, "H")
        elif isinstance(ins, Measure):
            live(ins.q, "MEASURE")
            measured.add(ins.q)
        else:
            raise ValueError(f"unknown instruction {ins!r}")


def measures_early(sched: Schedule) -> bool:
    """True when every measured qubit is retired as soon as possible: no
    gate of any kind sits between a qubit's last participating
    instruction (its pair creation, or a gate touching it) and its
    Measure. Other pair creations and measurements may intervene, since
    they commute with waiting."""
    last_touch: dict[int, int] = {}
    gate_positions: list[int] = []
    for idx, ins in enumerate(sched.instructions):
        if isinstance(ins, CreatePair):
            last_touch[ins.q_a] = idx
            last_touch[ins.q_b] = idx
        elif isinstance(ins, PbsGate):
            last_touch[ins.i1] = idx
            last_touch[ins.i2] = idx
            gate_positions.append(idx)
        elif isinstance(ins, Hadamard):
            last_touch[ins.q] = idx
            gate_positions.append(idx)
    for idx, ins in enumerate(sched.instructions):
        if not isinstance(ins, Measure):
            continue
        start = last_touch.get(ins.q, -1)
        if any(start < g < idx for g in gate_positions):
            return False
    return True


# ---------------------------------------------------------------------------
# Protocol schedule generator


def plan_tree_protocol(m: int) -> Schedule:
    """Doubling protocol schedule for m connection levels.

    Creates 2^m Bell pairs on qubits 1..2^(m+1), measures each pair's
    outer qubit up front, then fuses neighboring segments level by
    level: one gate per merge, with the spent connection qubit measured
    immediately after its gate. The surviving connection qubit is
    measured last. Executing the gates (measurements are bookkeeping)
    leaves a connected caterpillar tree on all 2^(m+1) qubits.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    num_pairs = 1 << m
    instructions: list[Instruction] = []
    conns: list[int] = []
    outers: list[int] = []
    for k in range(num_pairs):
        left, right = 2 * k + 1, 2 * k + 2
        instructions.append(CreatePair(left, right))
        if k % 2 == 0:
            conns.append(right)
            outers.append(left)
        else:
            conns.append(left)
            outers.append(right)
    instructions.extend(Measure(q) for q in outers)
    while len(conns) > 1:
        next_conns = []
        for j in range(0, len(conns), 2):
            c_left, c_right = conns[j], conns[j + 1]
            instructions.append(PbsGate(c_left, c_right))
            instructions.append(Measure(c_left))
            next_conns.append(c_right)
        conns = next_conns
    instructions.append(Measure(conns[0]))

    target = _graph_from_join_instructions(instructions)
    return Schedule(tuple(instructions), target=target, levels=m)


def _graph_from_join_instructions(instructions: list[Instruction]) -> Graph:
    """Track the edge set of a pairs-and-inter-gates schedule directly
    with the join rewrite rule, then relabel to 0..n-1 in id order."""
    edges: set[tuple[int, int]] = set()
    labels: list[int] = []
    for ins in instructions:
        if isinstance(ins, CreatePair):
            edges.add(tuple(sorted((ins.q_a, ins.q_b))))
            labels.extend((ins.q_a, ins.q_b))
        elif isinstance(ins, PbsGate):
            edges = _join_edges(edges, ins.i1, ins.i2)
    index = {q: i for i, q in enumerate(sorted(labels))}
    return Graph.from_edges(len(labels), [(index[u], index[v]) for u, v in edges])


def _join_edges(edges: set[tuple[int, int]], i1: int, i2: int) -> set[tuple[int, int]]:
    moved = set()
    kept = set()
    for u, v in edges:
        if i2 in (u, v):
            other = u if v == i2 else v
            if other != i1:
                moved.add(tuple(sorted((i1, other))))
        else:
            kept.add((u, v))
    kept |= moved
    kept.add(tuple(sorted((i1, i2))))
    return kept


# ---------------------------------------------------------------------------
# Exact join-rule planning for trees


def plan_join_sequence(target: Graph) -> Schedule | None:
    """Decide whether the inter-graph fusion rule alone can build the
    target tree, and return a schedule when it can (None otherwise).

    The decision unwinds the last gate: a join that produced tree T
    turned some current leaf l (with neighbor s) into a leaf while s
    absorbed l's old neighbors. Removing s splits T into subtrees; those
    must divide into a group kept with s and a group re-rooted on l,
    each side of even total order (an odd count of odd subtrees), and
    both sides must themselves be buildable. Sources are single edges,
    so odd-order targets fail immediately. Verdicts are memoized by tree
    isomorphism class; all ties break toward the lowest vertex id.
    """
    if not target.is_tree():
        raise ValueError("join planning requires a tree")
    n = target.num_vertices
    if n % 2 == 1:
        return None
    adjacency = {v: tuple(sorted(target.neighbors(v))) for v in range(n)}
    memo: dict[tuple, bool] = {}
    instructions = _plan_tree(adjacency, memo)
    if instructions is None:
        return None
    sched = Schedule(tuple(instructions), target=target)
    return sched


def _plan_tree(adj: dict[int, tuple[int, ...]], memo: dict[tuple, bool]) -> list[Instruction] | None:
    vertices = sorted(adj)
    if len(vertices) % 2 == 1:
        return None
    if len(vertices) == 2:
        a, b = vertices
        return [CreatePair(a, b)]
    key = _tree_canonical(adj)
    if memo.get(key) is False:
        return None

    for leaf in vertices:
        if len(adj[leaf]) != 1:
            continue
        support = adj[leaf][0]
        subtrees = _subtrees_off(adj, support, leaf)
        odd_flags = [len(members) % 2 == 1 for members, _root in subtrees]
        for mask in range(1 << len(subtrees)):
            to_leaf_odd = sum(1 for i, odd in enumerate(odd_flags) if odd and mask >> i & 1)
            to_support_odd = sum(odd_flags) - to_leaf_odd
            if to_leaf_odd % 2 == 0 or to_support_odd % 2 == 0:
                continue
            support_side = [t for i, t in enumerate(subtrees) if not mask >> i & 1]
            leaf_side = [t for i, t in enumerate(subtrees) if mask >> i & 1]
            sub_a = _plan_tree(_attach(adj, support, support_side), memo)
            if sub_a is None:
                continue
            sub_b = _plan_tree(_attach(adj, leaf, leaf_side), memo)
            if sub_b is None:
                continue
            memo[key] = True
            return sub_a + sub_b + [PbsGate(support, leaf)]
    memo[key] = False
    return None


def _subtrees_off(
    adj: dict[int, tuple[int, ...]], support: int, leaf: int
) -> list[tuple[list[int], int]]:
    """Components of the tree minus `support`, excluding the bare leaf.
    Each comes back as (sorted members, root adjacent to support)."""
    out = []
    for root in adj[support]:
        if root == leaf:
            continue
        members = [root]
        stack = [(root, support)]
        while stack:
            v, parent = stack.pop()
            for w in adj[v]:
                if w != parent:
                    members.append(w)
                    stack.append((w, v))
        out.append((sorted(members), root))
    out.sort(key=lambda item: item[0][0])
    return out


def _attach(
    adj: dict[int, tuple[int, ...]],
    hub: int,
    subtrees: list[tuple[list[int], int]],
) -> dict[int, tuple[int, ...]]:
    """Adjacency of hub plus the given subtrees, with each subtree's
    root connected to the hub. Each subtree meets the removed support
    vertex at its root only, so this is exact for both sides of the
    decomposition: the support keeps precisely its root edges, and the
    leaf acquires the roots it had before the join."""
    keep = {hub}
    for members, _root in subtrees:
        keep.update(members)
    roots = {root for _members, root in subtrees}
    new_adj: dict[int, list[int]] = {v: [] for v in keep}
    for v in keep:
        if v == hub:
            continue
        for w in adj[v]:
            if w in keep and w != hub:
                new_adj[v].append(w)
    for root in sorted(roots):
        new_adj[hub].append(root)
        new_adj[root].append(hub)
    return {v: tuple(sorted(ws)) for v, ws in new_adj.items()}


def _tree_canonical(adj: dict[int, tuple[int, ...]]) -> tuple:
    """Isomorphism-class key: rooted shape code taken at the centroid(s)."""
    centroids = _centroids(adj)
    return tuple(sorted(_rooted_code(adj, c) for c in centroids))


def _centroids(adj: dict[int, tuple[int, ...]]) -> list[int]:
    n = len(adj)
    start = next(iter(adj))
    order = []
    parent = {start: None}
    stack = [start]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in adj[v]:
            if w != parent[v]:
                parent[w] = v
                stack.append(w)
    size = {v: 1 for v in adj}
    for v in reversed(order):
        if parent[v] is not None:
            size[parent[v]] += size[v]
    best, centroids = n + 1, []
    for v in adj:
        heaviest = n - size[v]
        for w in adj[v]:
            if w != parent[v]:
                heaviest = max(heaviest, size[w])
        if heaviest < best:
            best, centroids = heaviest, [v]
        elif heaviest == best:
            centroids.append(v)
    return centroids


def _rooted_code(adj: dict[int, tuple[int, ...]], root: int) -> tuple:
    def code(v: int, parent: int | None) -> tuple:
        return tuple(sorted(code(w, v) for w in adj[v] if w != parent))

    return code(root, None)


# ---------------------------------------------------------------------------
# Brute-force schedule search


def brute_force_schedule_search(
    target: Graph,
    max_qubits: int = 8,
    allow_intra: bool = False,
    allow_hadamard: bool = False,
    max_gates: int | None = None,
) -> Schedule | None:
    """Breadth-first schedule oracle for small targets.

    Every schedule normalizes to pair creations first (creations commute
    with gates on other qubits), so the search runs over gate sequences
    from every perfect matching of the target's vertices. With only
    inter-graph gates the state stays a labeled forest and the join
    rewrite rule applies; allowing intra-graph gates or bare Hadamards
    switches to breadth-first search over canonical stabilizer groups.
    Returns a minimum-gate-count schedule, or None if none exists within
    max_gates (default: one gate beyond the tree-building minimum).
    """
    n = target.num_vertices
    if n > max_qubits:
        raise ValueError(f"target has {n} vertices, cap is {max_qubits}")
    if n == 0:
        raise ValueError("target must have at least one vertex")
    if n % 2 == 1:
        return None  # pair sources emit qubits two at a time
    if max_gates is None:
        max_gates = n // 2 + 1

    if allow_intra or allow_hadamard:
        return _search_stabilizer(target, allow_intra, allow_hadamard, max_gates)
    return _search_forest(target, max_gates)


def _matchings(vertices: list[int]) -> Iterator[list[tuple[int, int]]]:
    """All perfect matchings, lowest-id-first ordering."""
    if not vertices:
        yield []
        return
    first = vertices[0]
    for i in range(1, len(vertices)):
        partner = vertices[i]
        rest = vertices[1:i] + vertices[i + 1 :]
        for sub in _matchings(rest):
            yield [(first, partner)] + sub


def _search_forest(target: Graph, max_gates: int) -> Schedule | None:
    n = target.num_vertices
    goal = frozenset(target.edges)
    # Inter-graph joins merge one component per gate, so a spanning tree
    # costs exactly n/2 - 1 of them; deeper search cannot help.
    depth_needed = n // 2 - 1
    if depth_needed > max_gates:
        return None

    start_states = []
    seen: dict[frozenset, tuple] = {}
    for matching in _matchings(list(range(n))):
        state = frozenset(tuple(sorted(p)) for p in matching)
        if state not in seen:
            seen[state] = (None, None, tuple(matching))
            start_states.append(state)

    def reconstruct(state: frozenset) -> Schedule:
        gates: list[Instruction] = []
        while True:
            prev, gate, matching = seen[state]
            if prev is None:
                pairs = [CreatePair(a, b) for a, b in matching]
                return Schedule(tuple(pairs + gates[::-1]), target=target)
            gates.append(gate)
            state = prev

    if goal in seen:
        return reconstruct(goal)

    frontier = start_states
    for _depth in range(depth_needed):
        next_frontier = []
        for state in frontier:
            component = _component_labels(n, state)
            for i1 in range(n):
                for i2 in range(n):
                    if i1 == i2 or component[i1] == component[i2]:
                        continue
                    new_state = frozenset(_join_edges(set(state), i1, i2))
                    if new_state in seen:
                        continue
                    seen[new_state] = (state, PbsGate(i1, i2), None)
                    if new_state == goal:
                        return reconstruct(new_state)
                    next_frontier.append(new_state)
        frontier = next_frontier
    return None


def _component_labels(n: int, edges: frozenset) -> dict[int, int]:
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        parent[find(u)] = find(v)
    return {v: find(v) for v in range(n)}


def _search_stabilizer(
    target: Graph, allow_intra: bool, allow_hadamard: bool, max_gates: int
) -> Schedule | None:
    """Breadth-first search over canonical stabilizer groups. When
    intra-graph gates are forbidden, each state also carries the
    partition of qubits into clusters that have interacted so far, since
    Hadamards can leave states whose cluster structure the group alone
    no longer shows."""
    n = target.num_vertices
    goal = graph_to_stabilizers(target).canonical_form()
    track_parts = not allow_intra

    seen: dict[tuple, tuple] = {}
    frontier: list[tuple[tuple, StabilizerGroup, frozenset]] = []

    def reconstruct(key: tuple) -> Schedule:
        gates: list[Instruction] = []
        while True:
            prev, gate, matching = seen[key]
            if prev is None:
                pairs = [CreatePair(a, b) for a, b in matching]
                return Schedule(tuple(pairs + gates[::-1]), target=target)
            gates.append(gate)
            key = prev

    for matching in _matchings(list(range(n))):
        group = _matching_group(n, matching)
        parts = frozenset(frozenset(p) for p in matching) if track_parts else frozenset()
        key = (group.canonical_form(), parts)
        if key in seen:
            continue
        seen[key] = (None, None, tuple(matching))
        if key[0] == goal:
            return reconstruct(key)
        frontier.append((key, group, parts))

    for _depth in range(max_gates):
        next_frontier = []
        for key, group, parts in frontier:
            cluster_of = {q: c for c in parts for q in c}
            moves: list[Instruction] = []
            for i1 in range(n):
                for i2 in range(n):
                    if i1 == i2:
                        continue
                    if track_parts and cluster_of[i1] is cluster_of[i2]:
                        continue
                    moves.append(PbsGate(i1, i2))
            if allow_hadamard:
                moves.extend(Hadamard(q) for q in range(n))
            for move in moves:
                if isinstance(move, PbsGate):
                    _prob, new_group = apply_pbs_gate(group, move.i1, move.i2)
                    if new_group is None:
                        continue
                    if track_parts:
                        a, b = cluster_of[move.i1], cluster_of[move.i2]
                        new_parts = (parts - {a, b}) | {a | b}
                    else:
                        new_parts = parts
                else:
                    new_group = group.apply_hadamard(move.q)
                    new_parts = parts
                new_key = (new_group.canonical_form(), new_parts)
                if new_key in seen:
                    continue
                seen[new_key] = (key, move, None)
                if new_key[0] == goal:
                    return reconstruct(new_key)
                next_frontier.append((new_key, new_group, new_parts))
        frontier = next_frontier
    return None


def _matching_group(n: int, matching: tuple[tuple[int, int], ...]) -> StabilizerGroup:
    generators = []
    for a, b in matching:
        generators.append(PauliString(n, x_bits=1 << a, z_bits=1 << b, phase=0))
        generators.append(PauliString(n, x_bits=1 << b, z_bits=1 << a, phase=0))
    return StabilizerGroup(n, tuple(generators))


# ---------------------------------------------------------------------------
# Schedule execution


def execute_schedule(sched: Schedule) -> tuple[float, StabilizerGroup, Graph | None]:
    """Run a schedule through the stabilizer engine from an empty register.

    Measure instructions are recorded for bookkeeping but never applied.
    Returns the cumulative postselection probability, the final group
    re-indexed so qubit ids appear in sorted order, and the graph whose
    state that group stabilizes (None when it is not in graph form or
    when a gate outcome was impossible, which also zeroes the
    probability and stops execution).
    """
    validate_schedule(sched)
    labels: list[int] = []
    group = StabilizerGroup(0, ())
    prob = 1.0
    for ins in sched.instructions:
        if isinstance(ins, CreatePair):
            group = _extend_with_pair(group, len(labels), len(labels) + 1)
            labels.extend((ins.q_a, ins.q_b))
        elif isinstance(ins, PbsGate):
            gate_prob, new_group = apply_pbs_gate(group, labels.index(ins.i1), labels.index(ins.i2))
            if new_group is None:
                return 0.0, _reindex_sorted(group, labels), None
            prob *= gate_prob
            group = new_group
        elif isinstance(ins, Hadamard):
            group = group.apply_hadamard(labels.index(ins.q))
        # Measure: recorded by validate_schedule's pass; no tableau action.
    group = _reindex_sorted(group, labels)
    return prob, group, stabilizers_to_graph(group)


def _extend_with_pair(group: StabilizerGroup, idx_a: int, idx_b: int) -> StabilizerGroup:
    n = group.num_qubits + 2
    generators = [replace(g, num_qubits=n) for g in group.generators]
    generators.append(PauliString(n, x_bits=1 << idx_a, z_bits=1 << idx_b, phase=0))
    generators.append(PauliString(n, x_bits=1 << idx_b, z_bits=1 << idx_a, phase=0))
    return StabilizerGroup(n, tuple(generators))


def _reindex_sorted(group: StabilizerGroup, labels: list[int]) -> StabilizerGroup:
    """Permute qubits so that sorted(labels)[i] sits at index i."""
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    position = {old: new for new, old in enumerate(order)}
    if all(position[i] == i for i in range(len(labels))):
        return group

    def permute(mask: int) -> int:
        out = 0
        for old, new in position.items():
            if mask >> old & 1:
                out |= 1 << new
        return out

    generators = tuple(
        PauliString(g.num_qubits, permute(g.x_bits), permute(g.z_bits), g.phase)
        for g in group.generators
    )
    return StabilizerGroup(group.num_qubits, generators)


def execute_schedule_fock(sched: Schedule) -> tuple[float, FockState | None]:
    """Second-quantized execution with per-gate postselection on one
    photon in each of the gate's two ports. Measure is bookkeeping only;
    ports keep the schedule's qubit ids."""
    validate_schedule(sched)
    state: FockState | None = None
    prob = 1.0
    for ins in sched.instructions:
        if isinstance(ins, CreatePair):
            pair = make_bell_pair(ins.q_a, ins.q_b).apply_hwp_hadamard(ins.q_b)
            state = pair if state is None else tensor(state, pair)
        elif isinstance(ins, PbsGate):
            assert state is not None
            state = state.apply_pbs(ins.i1, ins.i2)
            gate_prob, kept = state.postselect_single_photon([ins.i1, ins.i2])
            if kept is None:
                return 0.0, None
            prob *= gate_prob
            state = kept.apply_hwp_hadamard(ins.i2)
        elif isinstance(ins, Hadamard):
            assert state is not None
            state = state.apply_hwp_hadamard(ins.q)
    return prob, state


# ---------------------------------------------------------------------------
# Text and JSON formats


def schedule_text(sched: Schedule) -> str:
    lines = []
    for ins in sched.instructions:
        if isinstance(ins, CreatePair):
            lines.append(f"PAIR {ins.q_a} {ins.q_b}")
        elif isinstance(ins, PbsGate):
            lines.append(f"PBS {ins.i1} {ins.i2}")
        elif isinstance(ins, Hadamard):
            lines.append(f"H {ins.q}")
        elif isinstance(ins, Measure):
            lines.append(f"MEASURE {ins.q}")
    return "\n".join(lines) + "\n"


def parse_schedule(text: str) -> Schedule:
    """Parse the line format: PAIR a b / PBS i1 i2 / H q / MEASURE q,
    with blank lines and # comments ignored."""
    instructions: list[Instruction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        op, args = parts[0].upper(), parts[1:]
        try:
            values = [int(a) for a in args]
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer qubit id in {raw!r}") from None
        if op == "PAIR" and len(values) == 2:
            instructions.append(CreatePair(*values))
        elif op == "PBS" and len(values) == 2:
            instructions.append(PbsGate(*values))
        elif op == "H" and len(values) == 1:
            instructions.append(Hadamard(values[0]))
        elif op == "MEASURE" and len(values) == 1:
            instructions.append(Measure(values[0]))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    sched = Schedule(tuple(instructions))
    validate_schedule(sched)
    return sched


def schedule_json_dict(sched: Schedule) -> dict:
    ops = []
    for ins in sched.instructions:
        if isinstance(ins, CreatePair):
            ops.append({"op": "PAIR", "qubits": [ins.q_a, ins.q_b]})
        elif isinstance(ins, PbsGate):
            ops.append({"op": "PBS", "qubits": [ins.i1, ins.i2]})
        elif isinstance(ins, Hadamard):
            ops.append({"op": "H", "qubits": [ins.q]})
        elif isinstance(ins, Measure):
            ops.append({"op": "MEASURE", "qubits": [ins.q]})
    return {"instructions": ops}


def schedule_from_json_dict(doc: dict) -> Schedule:
    instructions: list[Instruction] = []
    for entry in doc["instructions"]:
        op, qubits = entry["op"].upper(), entry["qubits"]
        if op == "PAIR":
            instructions.append(CreatePair(*qubits))
        elif op == "PBS":
            instructions.append(PbsGate(*qubits))
        elif op == "H":
            instructions.append(Hadamard(*qubits))
        elif op == "MEASURE":
            instructions.append(Measure(*qubits))
        else:
            raise ValueError(f"unknown op {op!r}")
    sched = Schedule(tuple(instructions))
    validate_schedule(sched)
    return sched
