"""
Differentiable operations.

Every op computes its value eagerly and, when a :py:class:`Graph` is active
and one of its operands requires gradients, records a backward closure. The
closures return one gradient per operand (None where no gradient is needed).
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import expit

from .tensor import Tensor, as_tensor, active_graph
from ..exceptions import ShapeError


def _record(op, inputs, data, backward):
    output = Tensor(data)
    graph = active_graph()
    if graph is not None and any(tensor.requires_grad for tensor in inputs):
        graph.record(op, inputs, output, backward)
    return output


def _unbroadcast(grad, shape):
    """Sum `grad` over the axes that were broadcast to reach its shape."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, extent in enumerate(shape):
        if extent == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _broadcast_shape(op, a, b):
    try:
        return np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeError("{}: incompatible shapes {} and {}".format(op, a.shape, b.shape))


# Elementwise arithmetic
def add(a, b):
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("add", a, b)

    def backward(grad):
        return (_unbroadcast(grad, a.shape) if a.requires_grad else None,
                _unbroadcast(grad, b.shape) if b.requires_grad else None)

    return _record("add", (a, b), a.data + b.data, backward)


def sub(a, b):
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("sub", a, b)

    def backward(grad):
        return (_unbroadcast(grad, a.shape) if a.requires_grad else None,
                _unbroadcast(-grad, b.shape) if b.requires_grad else None)

    return _record("sub", (a, b), a.data - b.data, backward)


def mul(a, b):
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("mul", a, b)

    def backward(grad):
        return (_unbroadcast(grad*b.data, a.shape) if a.requires_grad else None,
                _unbroadcast(grad*a.data, b.shape) if b.requires_grad else None)

    return _record("mul", (a, b), a.data*b.data, backward)


def matmul(a, b):
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError("matmul: incompatible shapes {} and {}".format(a.shape, b.shape))

    def backward(grad):
        return (grad @ b.data.T if a.requires_grad else None,
                a.data.T @ grad if b.requires_grad else None)

    return _record("matmul", (a, b), a.data @ b.data, backward)


def sum(x):
    x = as_tensor(x)

    def backward(grad):
        return (np.broadcast_to(grad, x.shape).copy(),)

    return _record("sum", (x,), np.array(x.data.sum()), backward)


def mean(x):
    x = as_tensor(x)
    n = x.size

    def backward(grad):
        return (np.full(x.shape, grad/n),)

    return _record("mean", (x,), np.array(x.data.mean()), backward)


def reshape(x, shape):
    x = as_tensor(x)
    try:
        data = x.data.reshape(shape)
    except ValueError:
        raise ShapeError("reshape: cannot reshape {} into {}".format(x.shape, shape))

    def backward(grad):
        return (grad.reshape(x.shape),)

    return _record("reshape", (x,), data, backward)


def stop_gradient(x):
    """Identity in the forward pass, blocks all gradient flow into `x`."""
    x = as_tensor(x)

    def backward(grad):
        return (None,)

    return _record("stop_gradient", (x,), x.data.copy(), backward)


def gather_rows(table, indices):
    """Rows ``table[indices]``, gradients are scattered back onto the selected rows."""
    table = as_tensor(table)
    indices = np.asarray(indices, dtype=np.int64)

    def backward(grad):
        table_grad = np.zeros_like(table.data)
        np.add.at(table_grad, indices, grad)
        return (table_grad,)

    return _record("gather_rows", (table,), table.data[indices], backward)


# Activations
def relu(x):
    x = as_tensor(x)
    mask = x.data > 0

    def backward(grad):
        return (grad*mask,)

    return _record("relu", (x,), np.where(mask, x.data, 0.0), backward)


def sigmoid(x):
    x = as_tensor(x)
    s = expit(x.data)

    def backward(grad):
        return (grad*s*(1 - s),)

    return _record("sigmoid", (x,), s, backward)


def tanh(x):
    x = as_tensor(x)
    t = np.tanh(x.data)

    def backward(grad):
        return (grad*(1 - t*t),)

    return _record("tanh", (x,), t, backward)


# Losses
def mse_loss(x, target):
    """Mean over all elements of ``(x - target)^2``."""
    x, target = as_tensor(x), as_tensor(target)
    if x.shape != target.shape:
        raise ShapeError("mse_loss: shapes {} and {} differ".format(x.shape, target.shape))

    difference = x.data - target.data
    n = difference.size

    def backward(grad):
        d = 2*difference/n*grad
        return (d if x.requires_grad else None,
                -d if target.requires_grad else None)

    return _record("mse_loss", (x, target), np.array(np.mean(difference*difference)), backward)


def bce_loss(p, target, eps=1e-12):
    """
    Binary cross-entropy ``-mean(t log p + (1 - t) log(1 - p))``.

    `p` is clipped to ``[eps, 1 - eps]`` so saturated probabilities give a
    large but finite loss.
    """
    p, target = as_tensor(p), as_tensor(target)
    if p.shape != target.shape:
        raise ShapeError("bce_loss: shapes {} and {} differ".format(p.shape, target.shape))

    clipped = np.clip(p.data, eps, 1 - eps)
    t = target.data
    n = clipped.size

    loss = -np.mean(t*np.log(clipped) + (1 - t)*np.log(1 - clipped))

    def backward(grad):
        return ((clipped - t)/(clipped*(1 - clipped))/n*grad, None)

    return _record("bce_loss", (p, target), np.array(loss), backward)


# Dense layers
def linear(x, weight, bias=None):
    """
    Affine map ``x weight^T + bias``.

    Parameters
    ----------
    x : Tensor
        Input of shape (N, in_features).
    weight : Tensor
        Shape (out_features, in_features).
    bias : {Tensor, None}, optional
        Shape (out_features,).
    """
    x, weight = as_tensor(x), as_tensor(weight)
    if x.ndim != 2 or weight.ndim != 2 or x.shape[1] != weight.shape[1]:
        raise ShapeError("linear: input {} does not match weight {}".format(x.shape, weight.shape))

    data = x.data @ weight.data.T
    inputs = [x, weight]
    if bias is not None:
        bias = as_tensor(bias)
        if bias.shape != (weight.shape[0],):
            raise ShapeError("linear: bias {} does not match weight {}".format(bias.shape, weight.shape))
        data = data + bias.data
        inputs.append(bias)

    def backward(grad):
        grads = [grad @ weight.data if x.requires_grad else None,
                 grad.T @ x.data if weight.requires_grad else None]
        if bias is not None:
            grads.append(grad.sum(axis=0))
        return grads

    return _record("linear", inputs, data, backward)


# Convolutions
def _pad(x, pad):
    if pad == 0:
        return x
    return np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))


def _crop(x, pad):
    if pad == 0:
        return x
    return x[:, :, pad:x.shape[2] - pad, pad:x.shape[3] - pad]


def _windows(padded, kernel, stride):
    """Strided patches, shape (N, C, H_out, W_out, kh, kw)."""
    return sliding_window_view(padded, kernel, axis=(2, 3))[:, :, ::stride, ::stride]


def _correlate(padded, weight, stride):
    """out[n, o] = sum_c padded[n, c] (*) weight[o, c], strided cross-correlation."""
    windows = _windows(padded, weight.shape[2:], stride)
    return np.tensordot(windows, weight, axes=([1, 4, 5], [1, 2, 3])).transpose(0, 3, 1, 2)


def _scatter(grad, weight, stride, padded_shape):
    """Adjoint of :py:func:`_correlate` with respect to its input."""
    out = np.zeros(padded_shape)
    rows, columns = grad.shape[2], grad.shape[3]
    kh, kw = weight.shape[2:]
    for i in range(kh):
        for j in range(kw):
            contribution = np.tensordot(grad, weight[:, :, i, j], axes=([1], [0])).transpose(0, 3, 1, 2)
            out[:, :, i:i + stride*rows:stride, j:j + stride*columns:stride] += contribution
    return out


def conv2d(x, weight, bias=None, stride=1, pad=0):
    """
    2D cross-correlation.

    Parameters
    ----------
    x : Tensor
        Input, shape (N, C_in, H, W).
    weight : Tensor
        Kernel, shape (C_out, C_in, kh, kw).
    bias : {Tensor, None}, optional
        Shape (C_out,).
    stride : int, optional
    pad : int, optional
        Zero padding on every side.
    """
    x, weight = as_tensor(x), as_tensor(weight)
    if x.ndim != 4 or weight.ndim != 4 or x.shape[1] != weight.shape[1]:
        raise ShapeError("conv2d: input {} does not match kernel {}".format(x.shape, weight.shape))
    if x.shape[2] + 2*pad < weight.shape[2] or x.shape[3] + 2*pad < weight.shape[3]:
        raise ShapeError("conv2d: kernel {} larger than padded input {}".format(weight.shape, x.shape))

    padded = _pad(x.data, pad)
    data = _correlate(padded, weight.data, stride)

    inputs = [x, weight]
    if bias is not None:
        bias = as_tensor(bias)
        data = data + bias.data[None, :, None, None]
        inputs.append(bias)

    def backward(grad):
        x_grad = weight_grad = None
        if x.requires_grad:
            x_grad = _crop(_scatter(grad, weight.data, stride, padded.shape), pad)
        if weight.requires_grad:
            windows = _windows(padded, weight.shape[2:], stride)
            weight_grad = np.tensordot(grad, windows, axes=([0, 2, 3], [0, 2, 3]))
        grads = [x_grad, weight_grad]
        if bias is not None:
            grads.append(grad.sum(axis=(0, 2, 3)))
        return grads

    return _record("conv2d", inputs, data, backward)


def conv_transpose2d(x, weight, bias=None, stride=1, pad=0):
    """
    Transposed 2D convolution, the adjoint of :py:func:`conv2d`.

    Parameters
    ----------
    x : Tensor
        Input, shape (N, C_in, H, W).
    weight : Tensor
        Kernel, shape (C_in, C_out, kh, kw).
    bias : {Tensor, None}, optional
        Shape (C_out,).
    stride : int, optional
    pad : int, optional
        Rows and columns cropped from every side of the full output.

    Returns
    -------
    y : Tensor
        Shape (N, C_out, (H - 1) stride + kh - 2 pad, (W - 1) stride + kw - 2 pad).
    """
    x, weight = as_tensor(x), as_tensor(weight)
    if x.ndim != 4 or weight.ndim != 4 or x.shape[1] != weight.shape[0]:
        raise ShapeError("conv_transpose2d: input {} does not match kernel {}".format(x.shape, weight.shape))

    n, _, rows, columns = x.shape
    kh, kw = weight.shape[2:]
    full_shape = (n, weight.shape[1], (rows - 1)*stride + kh, (columns - 1)*stride + kw)
    if full_shape[2] <= 2*pad or full_shape[3] <= 2*pad:
        raise ShapeError("conv_transpose2d: padding {} removes the whole output {}".format(pad, full_shape))

    data = _crop(_scatter(x.data, weight.data, stride, full_shape), pad)

    inputs = [x, weight]
    if bias is not None:
        bias = as_tensor(bias)
        data = data + bias.data[None, :, None, None]
        inputs.append(bias)

    def backward(grad):
        padded = np.zeros(full_shape)
        padded[:, :, pad:full_shape[2] - pad, pad:full_shape[3] - pad] = grad

        x_grad = weight_grad = None
        if x.requires_grad:
            x_grad = _correlate(padded, weight.data, stride)
        if weight.requires_grad:
            windows = _windows(padded, (kh, kw), stride)
            weight_grad = np.tensordot(x.data, windows, axes=([0, 2, 3], [0, 2, 3]))
        grads = [x_grad, weight_grad]
        if bias is not None:
            grads.append(grad.sum(axis=(0, 2, 3)))
        return grads

    return _record("conv_transpose2d", inputs, data, backward)


# Normalization
def batch_norm(x, gamma, beta, running_mean, running_var, training=True, momentum=0.1, eps=1e-5):
    """
    Batch normalization over the batch (and spatial) axes, per channel.

    In training mode the batch statistics normalize the input and update the
    running statistics in place, ``running = (1 - momentum) running +
    momentum batch`` with the unbiased batch variance. In evaluation mode the
    running statistics are used and the op is an affine map.

    Parameters
    ----------
    x : Tensor
        Shape (N, C) or (N, C, H, W).
    gamma, beta : Tensor
        Scale and shift, shape (C,).
    running_mean, running_var : array
        Running statistics, shape (C,), updated in place.
    training : bool, optional
    momentum : float, optional
        Default is 0.1.
    eps : float, optional
        Default is 1e-5.
    """
    x, gamma, beta = as_tensor(x), as_tensor(gamma), as_tensor(beta)
    if x.ndim not in (2, 4) or x.shape[1] != gamma.shape[0]:
        raise ShapeError("batch_norm: input {} does not match {} channels".format(x.shape, gamma.shape[0]))

    axes = (0,) if x.ndim == 2 else (0, 2, 3)
    view = (1, -1) if x.ndim == 2 else (1, -1, 1, 1)
    count = x.size//x.shape[1]

    if training:
        batch_mean = x.data.mean(axis=axes)
        batch_var = x.data.var(axis=axes)

        running_mean *= 1 - momentum
        running_mean += momentum*batch_mean
        running_var *= 1 - momentum
        running_var += momentum*batch_var*(count/(count - 1) if count > 1 else 1.)
    else:
        batch_mean = running_mean
        batch_var = running_var

    inv_std = 1/np.sqrt(batch_var + eps)
    x_hat = (x.data - batch_mean.reshape(view))*inv_std.reshape(view)
    data = gamma.data.reshape(view)*x_hat + beta.data.reshape(view)

    def backward(grad):
        x_hat_grad = grad*gamma.data.reshape(view)
        if training:
            x_grad = inv_std.reshape(view)/count*(count*x_hat_grad
                                                  - x_hat_grad.sum(axis=axes).reshape(view)
                                                  - x_hat*(x_hat_grad*x_hat).sum(axis=axes).reshape(view))
        else:
            x_grad = x_hat_grad*inv_std.reshape(view)
        return (x_grad if x.requires_grad else None,
                (grad*x_hat).sum(axis=axes),
                grad.sum(axis=axes))

    return _record("batch_norm", (x, gamma, beta), data, backward)
