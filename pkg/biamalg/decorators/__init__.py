from .theorem_registry import Case, TheoremRegistry, TheoremResult, registry

__all__ = ['Case', 'TheoremRegistry', 'TheoremResult', 'registry']
