import numpy as np
import pytest

from sfcsurvive.embedding import (
    EmbeddingState,
    ServiceChain,
    chains_from_json,
    embed_chain,
    state_from_json,
    state_to_json,
    utilization,
)
from sfcsurvive.errors import NodeOutOfRange
from sfcsurvive.topology import build_network


def path3(caps=(1, 1, 1)):
    return build_network(3, [(0, 1), (1, 2)], list(caps))


def test_first_fit_walks_the_path():
    net = path3()
    state = EmbeddingState.empty(net, 2)
    chain = ServiceChain(id="c0", vnf_types=(0, 1), source=0, destination=2)
    assert embed_chain(net, state, chain)
    assert state.m[0, 0] == 1  # first VNF on the path head
    assert state.m[1, 1] == 1  # second VNF on the next free path node
    assert state.placements[0][1] == [0, 1]


def test_rejected_when_everything_full():
    net = path3()
    state = EmbeddingState.empty(net, 1)
    for k in range(3):
        assert embed_chain(net, state, ServiceChain(f"c{k}", (0,), 0, 2))
    before = state.m.copy()
    assert not embed_chain(net, state, ServiceChain("c3", (0,), 0, 2))
    assert np.array_equal(state.m, before)  # rejection leaves no trace
    assert len(state.placements) == 3


def test_re_embedding_doubles_counts():
    net = build_network(3, [(0, 1), (1, 2)], [10, 10, 10])
    state = EmbeddingState.empty(net, 2)
    chain = ServiceChain("c0", (0, 1, 0), 0, 2)
    assert embed_chain(net, state, chain)
    once = state.m.copy()
    assert embed_chain(net, state, chain)
    assert np.array_equal(state.m, 2 * once)
    assert len(state.placements) == 2


def test_embedding_is_deterministic():
    net = build_network(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], [2] * 5)
    chains = [ServiceChain(f"c{k}", (0, 1), 0, 3) for k in range(3)]
    runs = []
    for _ in range(2):
        state = EmbeddingState.empty(net, 2)
        for chain in chains:
            embed_chain(net, state, chain)
        runs.append((state.m.copy(), [hosts for _, hosts in state.placements]))
    assert np.array_equal(runs[0][0], runs[1][0])
    assert runs[0][1] == runs[1][1]


def test_off_path_fallback_prefers_near_nodes():
    # Star around node 1; path 0-1-2 fills up, spill goes to the closest
    # off-path node with the lowest id (node 3, adjacent to the path).
    net = build_network(5, [(0, 1), (1, 2), (1, 3), (3, 4)], [1, 1, 1, 1, 1])
    state = EmbeddingState.empty(net, 1)
    chain = ServiceChain("c0", (0, 0, 0, 0), 0, 2)
    assert embed_chain(net, state, chain)
    assert state.m[3, 0] == 1
    assert state.m[4, 0] == 0


def test_total_vnfs_is_sum_of_placements():
    net = build_network(4, [(0, 1), (1, 2), (2, 3)], [3] * 4)
    state = EmbeddingState.empty(net, 2)
    total = 0
    for k in range(4):
        chain = ServiceChain(f"c{k}", (k % 2, (k + 1) % 2), 0, 3)
        if embed_chain(net, state, chain):
            total += 2
    assert state.total_vnfs() == total
    assert sum(len(hosts) for _, hosts in state.placements) == total


def test_capacity_never_exceeded():
    net = path3(caps=(2, 1, 2))
    state = EmbeddingState.empty(net, 1)
    while embed_chain(net, state, ServiceChain("x", (0,), 0, 2)):
        pass
    assert (state.load() <= net.capacity).all()
    assert state.total_vnfs() == 5


def test_utilization_bounds():
    net = path3(caps=(2, 2, 0))
    state = EmbeddingState.empty(net, 1)
    assert utilization(net, state) == 0.0
    embed_chain(net, state, ServiceChain("c0", (0,), 0, 2))
    assert utilization(net, state) == pytest.approx(0.25)
    embed_chain(net, state, ServiceChain("c1", (0, 0, 0), 0, 2))
    assert utilization(net, state) == pytest.approx(1.0)


def test_bad_endpoints_raise():
    net = path3()
    state = EmbeddingState.empty(net, 1)
    with pytest.raises(NodeOutOfRange):
        embed_chain(net, state, ServiceChain("c0", (0,), 0, 9))


def test_unknown_type_raises():
    net = path3()
    state = EmbeddingState.empty(net, 1)
    with pytest.raises(ValueError):
        embed_chain(net, state, ServiceChain("c0", (4,), 0, 2))


def test_empty_chain_rejected_at_construction():
    with pytest.raises(ValueError):
        ServiceChain("c0", (), 0, 1)


def test_state_json_round_trip():
    net = path3(caps=(3, 3, 3))
    state = EmbeddingState.empty(net, 2)
    embed_chain(net, state, ServiceChain("c0", (0, 1), 0, 2))
    obj = state_to_json(state)
    again = state_from_json(obj, net)
    assert np.array_equal(again.m, state.m)


def test_state_json_validates_capacity():
    net = path3()
    with pytest.raises(ValueError):
        state_from_json({"m": [[5], [0], [0]]}, net)


def test_chains_from_json():
    chains = chains_from_json(
        [{"id": "a", "types": [0, 2], "src": 1, "dst": 3}]
    )
    assert chains[0].vnf_types == (0, 2)
    assert chains[0].source == 1 and chains[0].destination == 3
