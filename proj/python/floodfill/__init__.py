"""Depression filling, flow directions and watershed labels for raster DEMs."""

from ._core import (
    FloodfillError,
    fill,
    fill_epsilon,
    flowdirs,
    load_ascii_grid,
    planchon_darboux,
    save_ascii_grid,
    synth,
    trace_path,
    verify,
    watershed_boundaries,
    watersheds,
)

__all__ = [
    "FloodfillError",
    "fill",
    "fill_epsilon",
    "flowdirs",
    "load_ascii_grid",
    "planchon_darboux",
    "save_ascii_grid",
    "synth",
    "trace_path",
    "verify",
    "watershed_boundaries",
    "watersheds",
]
