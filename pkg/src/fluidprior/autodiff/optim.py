from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np

from ..exceptions import NumericalError


class AdamState(object):
    """
    Moment accumulators and step counter of the Adam optimizer.

    Parameters
    ----------
    shapes : list of tuple
        Shapes of the parameters.
    lr : float, optional
        Learning rate. Default is 0.001.
    beta1, beta2 : float, optional
        Decay of the first and second moments. Defaults are 0.9 and 0.999.
    eps : float, optional
        Denominator offset. Default is 1e-8.
    """
    def __init__(self, shapes, lr=0.001, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.step = 0
        self.m = [np.zeros(shape) for shape in shapes]
        self.v = [np.zeros(shape) for shape in shapes]



def adam_step(params, grads, state):
    """
    Bias-corrected Adam update of `params`, in place.

    Parameters
    ----------
    params : list of array
        Parameter arrays, updated in place.
    grads : list of array
        Gradients, same shapes as `params`.
    state : AdamState
        Optimizer state, advanced by one step.

    Returns
    -------
    params : list of array

    Raises
    ------
    ValueError
        If the shapes of parameters, gradients and moments disagree.
    NumericalError
        If a gradient is non-finite. The state and parameters are left
        untouched.
    """
    if len(params) != len(grads) or len(params) != len(state.m):
        raise ValueError("adam_step: {} parameters, {} gradients, {} moments".format(len(params), len(grads), len(state.m)))

    for index, (param, grad) in enumerate(zip(params, grads)):
        if np.shape(param) != np.shape(grad) or np.shape(param) != state.m[index].shape:
            raise ValueError("adam_step: parameter {} has shape {}, gradient {}".format(index, np.shape(param), np.shape(grad)))
        if not np.all(np.isfinite(grad)):
            raise NumericalError("adam step rejected: non-finite gradient for parameter {}".format(index), step=state.step + 1)

    state.step += 1
    correction1 = 1 - state.beta1**state.step
    correction2 = 1 - state.beta2**state.step

    for param, grad, m, v in zip(params, grads, state.m, state.v):
        m *= state.beta1
        m += (1 - state.beta1)*grad
        v *= state.beta2
        v += (1 - state.beta2)*grad*grad

        param -= state.lr*(m/correction1)/(np.sqrt(v/correction2) + state.eps)

    return params



class Adam(object):
    """
    Adam over a list of parameter tensors.

    Gradients are read from ``parameter.grad`` (missing gradients count as
    zero) and cleared after each step.
    """
    def __init__(self, parameters, lr=0.001, beta1=0.9, beta2=0.999, eps=1e-8):
        self.parameters = list(parameters)
        self.state = AdamState([parameter.shape for parameter in self.parameters],
                               lr=lr, beta1=beta1, beta2=beta2, eps=eps)


    def zero_grad(self):
        for parameter in self.parameters:
            parameter.grad = None


    def step(self):
        grads = [parameter.grad if parameter.grad is not None else np.zeros_like(parameter.data)
                 for parameter in self.parameters]
        adam_step([parameter.data for parameter in self.parameters], grads, self.state)
        self.zero_grad()
