# This file makes Python treat the directory mapreduce_wordfreq as a package.
"""MapReduce word-frequency pipeline, blocked reduction engine and corpus comparison."""

__version__ = "0.1.0"
