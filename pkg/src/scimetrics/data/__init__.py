"""Bundled data assets: country table, grouping schemes, sample corpus."""
