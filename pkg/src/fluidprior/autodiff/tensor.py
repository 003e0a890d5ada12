"""
Reverse-mode automatic differentiation on float64 numpy arrays.

Operations executed inside an active :py:class:`Graph` are recorded on its
tape, in execution order, which is a topological order. Outside a graph the
same operations only compute values, so models can be evaluated without
bookkeeping::

    with Graph() as graph:
        loss = mse_loss(linear(x, weight, bias), target)
    graph.backward(loss)
    weight.grad
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import threading
from collections import namedtuple

import numpy as np

from ..exceptions import UsageError


Node = namedtuple("Node", ["index", "op", "inputs", "output", "backward"])

_active = threading.local()


def active_graph():
    """The innermost graph active in this thread, or None."""
    stack = getattr(_active, "stack", None)
    return stack[-1] if stack else None


class Tensor(object):
    """
    A dense float64 array that can take part in differentiation.

    Parameters
    ----------
    data : array_like
        The values, converted to a contiguous float64 array.
    requires_grad : bool, optional
        Track gradients for this tensor. Parameters and inputs whose gradient
        is wanted set this. Default is False.
    name : {str, None}, optional
        Name used in checkpoints and gradient check reports.

    Attributes
    ----------
    data : array
        The values.
    grad : {array, None}
        Gradient of the last backward pass. Accumulated for leaf tensors,
        overwritten for recorded intermediates.
    """
    __array_priority__ = 100

    def __init__(self, data, requires_grad=False, name=None):
        self.data = np.ascontiguousarray(data, dtype=np.float64)
        self.requires_grad = requires_grad
        self.grad = None
        self.name = name
        self.graph = None
        self.node = None


    @property
    def shape(self):
        return self.data.shape


    @property
    def ndim(self):
        return self.data.ndim


    @property
    def size(self):
        return self.data.size


    def numpy(self):
        return self.data


    def item(self):
        return self.data.item()


    def zero_grad(self):
        self.grad = None


    def __repr__(self):
        return "Tensor(shape={}, name={}, requires_grad={})".format(self.shape, self.name, self.requires_grad)


    def __add__(self, other):
        from .ops import add
        return add(self, other)

    __radd__ = __add__


    def __sub__(self, other):
        from .ops import sub
        return sub(self, other)


    def __rsub__(self, other):
        from .ops import sub
        return sub(other, self)


    def __mul__(self, other):
        from .ops import mul
        return mul(self, other)

    __rmul__ = __mul__


    def __neg__(self):
        from .ops import mul
        return mul(self, -1.0)


    def __matmul__(self, other):
        from .ops import matmul
        return matmul(self, other)



def as_tensor(value):
    """Wrap arrays and numbers as constant tensors, tensors pass through."""
    if isinstance(value, Tensor):
        return value
    return Tensor(value)


class Graph(object):
    """
    Tape of recorded operations.

    A graph is used as a context manager while the forward pass runs, and
    :py:meth:`backward` then visits its nodes in reverse order, exactly once
    each. A graph can only be differentiated once.

    Attributes
    ----------
    nodes : list of Node
        Recorded operations in execution order.
    """
    def __init__(self):
        self.nodes = []
        self.consumed = False


    def __enter__(self):
        stack = getattr(_active, "stack", None)
        if stack is None:
            stack = _active.stack = []
        stack.append(self)
        return self


    def __exit__(self, exc_type, exc_value, traceback):
        _active.stack.pop()
        return False


    def __len__(self):
        return len(self.nodes)


    def record(self, op, inputs, output, backward):
        """
        Add an operation to the tape.

        Parameters
        ----------
        op : str
            Operation tag.
        inputs : list of Tensor
            Operands.
        output : Tensor
            Result, marked as requiring gradients.
        backward : callable
            ``backward(grad_output)`` returning one gradient (or None) per
            input.
        """
        node = Node(index=len(self.nodes), op=op, inputs=tuple(inputs), output=output, backward=backward)
        output.requires_grad = True
        output.graph = self
        output.node = node.index
        self.nodes.append(node)
        return node


    def backward(self, loss):
        """
        Propagate gradients from the scalar `loss` to every tensor that
        contributed to it.

        Parameters
        ----------
        loss : Tensor
            A single-element tensor recorded on this graph.

        Raises
        ------
        UsageError
            If `loss` was not produced by this graph (backward before
            forward), is not a scalar, or the graph was already
            differentiated.
        """
        if not isinstance(loss, Tensor) or loss.graph is not self:
            raise UsageError("backward called before the loss was computed on this graph")
        if loss.size != 1:
            raise UsageError("backward needs a scalar loss, got shape {}".format(loss.shape))
        if self.consumed:
            raise UsageError("this graph has already been differentiated")

        self.consumed = True

        grads = {id(loss): np.ones_like(loss.data)}
        leaves = {}

        for node in reversed(self.nodes):
            grad = grads.pop(id(node.output), None)
            if grad is None:
                continue

            node.output.grad = grad
            input_grads = node.backward(grad)

            for tensor, input_grad in zip(node.inputs, input_grads):
                if input_grad is None or not tensor.requires_grad:
                    continue

                key = id(tensor)
                if key in grads:
                    grads[key] = grads[key] + input_grad
                else:
                    grads[key] = input_grad

                if tensor.graph is not self:
                    leaves[key] = tensor

        for key, tensor in leaves.items():
            grad = grads[key]
            if tensor.grad is None:
                tensor.grad = np.array(grad, dtype=np.float64)
            else:
                tensor.grad = tensor.grad + grad



def backward(graph, loss, parameters=None):
    """
    Differentiate `loss` on `graph` and return the parameter gradients.

    Parameters
    ----------
    graph : Graph
        The graph the forward pass was recorded on.
    loss : Tensor
        Scalar loss.
    parameters : {list of Tensor, None}, optional
        Tensors whose gradients are returned.

    Returns
    -------
    grads : list of array
        Gradient per parameter, zeros for parameters the loss does not depend
        on.
    """
    graph.backward(loss)

    if parameters is None:
        return []
    return [parameter.grad if parameter.grad is not None else np.zeros_like(parameter.data)
            for parameter in parameters]
