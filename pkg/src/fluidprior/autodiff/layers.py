from __future__ import absolute_import, division, print_function, unicode_literals

from collections import OrderedDict

import numpy as np

from .tensor import Tensor
from . import ops


def kaiming_uniform(rng, shape, fan_in):
    """Uniform in ``[-b, b]`` with ``b = sqrt(6/fan_in)`` (ReLU gain)."""
    bound = np.sqrt(6./fan_in)
    return rng.uniform(-bound, bound, size=shape)


def xavier_uniform(rng, shape, fan_in, fan_out):
    """Uniform in ``[-b, b]`` with ``b = sqrt(6/(fan_in + fan_out))``."""
    bound = np.sqrt(6./(fan_in + fan_out))
    return rng.uniform(-bound, bound, size=shape)


class Module(object):
    """
    Container of parameters, buffers and submodules.

    Tensors assigned as attributes with ``requires_grad=True`` become
    parameters, assigned modules become submodules, and arrays registered
    with :py:meth:`register_buffer` are saved in the state but not trained.
    Names in :py:meth:`state_dict` are dotted paths, e.g. ``encoder.0.weight``.
    """
    def __init__(self):
        object.__setattr__(self, "_parameters", OrderedDict())
        object.__setattr__(self, "_modules", OrderedDict())
        object.__setattr__(self, "_buffers", [])
        object.__setattr__(self, "training", True)


    def __setattr__(self, name, value):
        if isinstance(value, Tensor) and value.requires_grad:
            self._parameters[name] = value
            if value.name is None:
                value.name = name
        elif isinstance(value, Module):
            self._modules[name] = value
        object.__setattr__(self, name, value)


    def register_buffer(self, name, array):
        object.__setattr__(self, name, np.asarray(array, dtype=np.float64))
        if name not in self._buffers:
            self._buffers.append(name)


    def add_module(self, name, module):
        setattr(self, name, module)


    def named_parameters(self, prefix=""):
        for name, parameter in self._parameters.items():
            yield prefix + name, parameter
        for name, module in self._modules.items():
            for item in module.named_parameters(prefix + name + "."):
                yield item


    def parameters(self):
        return [parameter for _, parameter in self.named_parameters()]


    def named_buffers(self, prefix=""):
        for name in self._buffers:
            yield prefix + name, getattr(self, name)
        for name, module in self._modules.items():
            for item in module.named_buffers(prefix + name + "."):
                yield item


    def train(self, mode=True):
        object.__setattr__(self, "training", mode)
        for module in self._modules.values():
            module.train(mode)
        return self


    def eval(self):
        return self.train(False)


    def zero_grad(self):
        for parameter in self.parameters():
            parameter.grad = None


    def state_dict(self):
        """Copies of all parameters and buffers, keyed by dotted name."""
        state = OrderedDict()
        for name, parameter in self.named_parameters():
            state[name] = parameter.data.copy()
        for name, buffer in self.named_buffers():
            state[name] = np.array(buffer, copy=True)
        return state


    def load_state_dict(self, state):
        """
        Copy values from `state` into the parameters and buffers.

        Raises
        ------
        KeyError
            If an entry is missing.
        ValueError
            If an entry has the wrong shape.
        """
        for name, parameter in self.named_parameters():
            if name not in state:
                raise KeyError("missing parameter {} in state".format(name))
            value = np.asarray(state[name], dtype=np.float64)
            if value.shape != parameter.shape:
                raise ValueError("parameter {} has shape {}, state has {}".format(name, parameter.shape, value.shape))
            parameter.data[...] = value

        for name, buffer in self.named_buffers():
            if name not in state:
                raise KeyError("missing buffer {} in state".format(name))
            buffer[...] = np.asarray(state[name], dtype=np.float64).reshape(buffer.shape)


    def forward(self, *args, **kwargs):
        raise NotImplementedError


    def __call__(self, *args, **kwargs):
        return self.forward(*args, **kwargs)



class Linear(Module):
    """Fully connected layer with Xavier-uniform weights and zero bias."""
    def __init__(self, in_features, out_features, rng, bias=True):
        super(Linear, self).__init__()

        self.weight = Tensor(xavier_uniform(rng, (out_features, in_features), in_features, out_features),
                             requires_grad=True)
        self.bias = Tensor(np.zeros(out_features), requires_grad=True) if bias else None


    def forward(self, x):
        return ops.linear(x, self.weight, self.bias)



class Conv2d(Module):
    """Strided convolution with Kaiming-uniform kernels and zero bias."""
    def __init__(self, in_channels, out_channels, kernel_size, rng, stride=1, pad=0):
        super(Conv2d, self).__init__()

        self.stride = stride
        self.pad = pad
        shape = (out_channels, in_channels, kernel_size, kernel_size)
        self.weight = Tensor(kaiming_uniform(rng, shape, in_channels*kernel_size**2), requires_grad=True)
        self.bias = Tensor(np.zeros(out_channels), requires_grad=True)


    def forward(self, x):
        return ops.conv2d(x, self.weight, self.bias, stride=self.stride, pad=self.pad)



class ConvTranspose2d(Module):
    """Transposed convolution with Kaiming-uniform kernels and zero bias."""
    def __init__(self, in_channels, out_channels, kernel_size, rng, stride=1, pad=0):
        super(ConvTranspose2d, self).__init__()

        self.stride = stride
        self.pad = pad
        shape = (in_channels, out_channels, kernel_size, kernel_size)
        self.weight = Tensor(kaiming_uniform(rng, shape, out_channels*kernel_size**2), requires_grad=True)
        self.bias = Tensor(np.zeros(out_channels), requires_grad=True)


    def forward(self, x):
        return ops.conv_transpose2d(x, self.weight, self.bias, stride=self.stride, pad=self.pad)



class BatchNorm(Module):
    """Per-channel batch normalization for (N, C) or (N, C, H, W) inputs."""
    def __init__(self, channels, momentum=0.1, eps=1e-5):
        super(BatchNorm, self).__init__()

        self.momentum = momentum
        self.eps = eps
        self.gamma = Tensor(np.ones(channels), requires_grad=True)
        self.beta = Tensor(np.zeros(channels), requires_grad=True)
        self.register_buffer("running_mean", np.zeros(channels))
        self.register_buffer("running_var", np.ones(channels))


    def forward(self, x):
        return ops.batch_norm(x, self.gamma, self.beta, self.running_mean, self.running_var,
                              training=self.training, momentum=self.momentum, eps=self.eps)



class Sequential(Module):
    """Chain of modules and plain functions, applied in order."""
    def __init__(self, *layers):
        super(Sequential, self).__init__()

        self.layers = list(layers)
        for index, layer in enumerate(layers):
            if isinstance(layer, Module):
                self.add_module(str(index), layer)


    def forward(self, x):
        for layer in self.layers:
            x = layer(x)
        return x
