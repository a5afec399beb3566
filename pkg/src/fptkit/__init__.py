"""F-pure thresholds, Fedder-type invariants and toric a-invariants over prime fields."""

__version__ = "0.1.0"
