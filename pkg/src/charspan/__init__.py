"""Exact analysis of involutive tableaux: characters, characteristic varieties and elementary reduction."""

__version__ = "0.1.0"
