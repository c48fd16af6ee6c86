"""Run mutually recursive generator procedures on an explicit stack.

A procedure is a generator that yields another generator to "call" it and
receives the callee's return value back from the ``yield``.  Exceptions
abort the whole run.
"""

from typing import Any, Generator

Proc = Generator[Any, Any, Any]


def run(proc: Proc) -> Any:
    stack = [proc]
    value = None
    while True:
        try:
            callee = stack[-1].send(value)
        except StopIteration as stop:
            stack.pop()
            value = stop.value
            if not stack:
                return value
            continue
        stack.append(callee)
        value = None
