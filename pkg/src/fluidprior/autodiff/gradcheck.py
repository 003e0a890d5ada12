from __future__ import absolute_import, division, print_function, unicode_literals

from collections import OrderedDict

import numpy as np

from .tensor import Graph


class GradientCheckReport(OrderedDict):
    """
    Maximum relative error per parameter block, keyed by parameter name.

    The error of a block is ``max|analytic - numeric| / max(max|analytic|,
    max|numeric|)``, so tiny gradient entries do not blow up the ratio.
    """
    @property
    def max_error(self):
        return max(self.values()) if self else 0.


    def passed(self, tolerance):
        return self.max_error < tolerance



def gradient_check(loss_function, parameters, h=1e-5):
    """
    Compare backward gradients against central finite differences.

    Parameters
    ----------
    loss_function : callable
        Function without arguments that builds the forward pass and returns a
        scalar loss tensor. It is called once inside a graph and twice per
        parameter entry outside any graph.
    parameters : list of Tensor
        Tensors to check, with ``requires_grad=True``.
    h : float, optional
        Finite difference step. Default is 1e-5.

    Returns
    -------
    report : GradientCheckReport
    """
    for parameter in parameters:
        parameter.grad = None

    with Graph() as graph:
        loss = loss_function()
    graph.backward(loss)

    report = GradientCheckReport()
    for index, parameter in enumerate(parameters):
        analytic = parameter.grad if parameter.grad is not None else np.zeros_like(parameter.data)
        numeric = np.zeros_like(parameter.data)

        flat = parameter.data.reshape(-1)
        numeric_flat = numeric.reshape(-1)
        for i in range(flat.size):
            original = flat[i]

            flat[i] = original + h
            plus = loss_function().data.item()
            flat[i] = original - h
            minus = loss_function().data.item()
            flat[i] = original

            numeric_flat[i] = (plus - minus)/(2*h)

        scale = max(np.max(np.abs(analytic)), np.max(np.abs(numeric)), 1e-12)
        name = parameter.name if parameter.name is not None else "param{}".format(index)
        report[name] = float(np.max(np.abs(analytic - numeric))/scale)

    return report
