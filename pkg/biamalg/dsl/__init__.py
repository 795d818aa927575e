"""
The biamalg scripting language: lexer, parser, pretty printer, interpreter
and spectrum export
"""
from .ast import Script, format_script
from .dot import export_spec_dot, spec_dot
from .interpreter import (
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    ExecutionOptions,
    ExecutionResult,
    execute_script,
    run_source,
)
from .parser import parse_dsl

__all__ = [
    "Script",
    "format_script",
    "export_spec_dot",
    "spec_dot",
    "EXIT_OK",
    "EXIT_CHECK_FAILED",
    "EXIT_INPUT_ERROR",
    "ExecutionOptions",
    "ExecutionResult",
    "execute_script",
    "run_source",
    "parse_dsl",
]
