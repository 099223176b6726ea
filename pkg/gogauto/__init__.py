"""Asynchronous automatic structures for graphs of finite and free groups."""

__version__ = "0.1.0"
