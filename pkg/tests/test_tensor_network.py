import numpy as np
import pytest

from trisparse.errors import EvaluationError
from trisparse.graphs import TreeDecomposition
from trisparse.hopf import ScalarField
from trisparse.tensor_network import IN, OUT, TENSOR, Contractor, TensorNetwork, evaluate


def chain(field=None):
    """``u -> B -> c`` with value ``u . B . c = 17``."""
    network = TensorNetwork(field)
    first, second = network.add_wire(2), network.add_wire(2)
    network.add_coupon(TENSOR, np.array([1, 2]), [first], (OUT,))
    network.add_coupon(TENSOR, np.array([[1, 2], [3, 4]]), [first, second], (IN, OUT))
    network.add_coupon(TENSOR, np.array([1, 1]), [second], (IN,))
    return network


def test_traced_identity():
    network = TensorNetwork()
    w = network.add_wire(3)
    network.add_coupon(TENSOR, np.eye(3, dtype=int), [w, w], (OUT, IN))
    assert evaluate(network) == 3


def test_chain_greedy():
    contractor = Contractor(chain())
    assert evaluate(contractor.network, contractor=contractor) == 17
    assert contractor.steps == 2
    assert contractor.max_rank == 2


def test_chain_with_plan():
    plan = TreeDecomposition([{0, 1}, {1, 2}], [(0, 1)])
    assert evaluate(chain(), plan) == 17


def test_chain_in_prime_field():
    assert evaluate(chain(ScalarField('F5'))) == 2


def test_empty_network_is_one():
    assert evaluate(TensorNetwork()) == 1
    assert evaluate(TensorNetwork(), TreeDecomposition([set()])) == 1


def test_disconnected_components_multiply():
    network = TensorNetwork()
    for dim in (2, 3):
        w = network.add_wire(dim)
        network.add_coupon(TENSOR, np.eye(dim, dtype=int), [w, w], (OUT, IN))
    assert evaluate(network) == 6


def test_dangling_wire():
    network = TensorNetwork()
    w = network.add_wire(2)
    network.add_coupon(TENSOR, np.array([1, 1]), [w], (OUT,))
    with pytest.raises(EvaluationError, match='not fully contracted'):
        evaluate(network)


def test_dimension_mismatch():
    network = TensorNetwork()
    w = network.add_wire(3)
    network.add_coupon(TENSOR, np.array([1, 1]), [w], (OUT,))
    network.add_coupon(TENSOR, np.array([1, 1]), [w], (IN,))
    with pytest.raises(EvaluationError, match='dimension'):
        evaluate(network)


def test_coupon_errors():
    network = TensorNetwork()
    w = network.add_wire(2)
    with pytest.raises(EvaluationError):
        network.add_coupon(TENSOR, np.array([1, 1]), [w, w], (OUT, IN))
    with pytest.raises(EvaluationError):
        network.add_coupon(TENSOR, np.array([1, 1]), [5], (OUT,))
    network.add_coupon(TENSOR, np.array([1, 1]), [w], (OUT,))
    with pytest.raises(EvaluationError, match='already'):
        network.add_coupon(TENSOR, np.array([1, 1]), [w], (OUT,))


def test_plan_must_cover_every_coupon():
    with pytest.raises(EvaluationError, match='does not cover'):
        evaluate(chain(), TreeDecomposition([{0, 1}]))
    with pytest.raises(EvaluationError, match='unknown coupon'):
        evaluate(chain(), TreeDecomposition([{0, 1, 2, 7}]))


def test_coupon_graph():
    graph = chain().coupon_graph()
    assert graph.node_count == 3
    assert graph.edge_count == 2


def test_entry_limit_stops_contraction():
    tight = Contractor(chain(), max_entries=1)
    with pytest.raises(EvaluationError, match='2 entries'):
        evaluate(tight.network, contractor=tight)
    contractor = Contractor(chain(), max_entries=2)
    assert evaluate(contractor.network, contractor=contractor) == 17
