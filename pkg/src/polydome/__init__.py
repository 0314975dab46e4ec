"""Dome surfaces over regular polygon bases.

A library and CLI for the solid whose horizontal cross-section at height z
is the regular n-gon with apothem sqrt(R**2 - z**2): exact parametrization
and point membership, watertight tessellation with STL/OBJ export,
equal-volume slab stacking, vertical cross-sections with elliptic-arc
verification, and three mutually checking volume estimators.
"""

from .analysis import (
    MonteCarloResult,
    PlaneSection,
    VolumeReport,
    ellipse_residual,
    mesh_plane_section,
    mesh_volume,
    monte_carlo_volume,
    plane_section,
    polygon_area,
    prism_volume,
    pyramid_volume,
    solid_volume,
    volume_report,
    write_section_csv,
)
from .meshing import (
    MeshResolution,
    NonWatertightError,
    TriangleMesh,
    tessellate,
    write_obj,
    write_stl,
)
from .slabs import (
    SlabComparison,
    SlabStack,
    build_slab_stack,
    convergence_profile,
    slab_apothem,
    slab_stack_mesh,
    slice_volume,
    write_slab_csv,
)
from .surface import (
    AngularDomain,
    SolidSpec,
    SurfaceSample,
    base_point,
    inside_mask,
    inside_solid,
    profile_arc_point,
    scaling_factor,
    scaling_factor_array,
    sector_index,
    surface_point,
    surface_sample,
)

__version__ = "0.1.0"

__all__ = [
    "AngularDomain",
    "MeshResolution",
    "MonteCarloResult",
    "NonWatertightError",
    "PlaneSection",
    "SlabComparison",
    "SlabStack",
    "SolidSpec",
    "SurfaceSample",
    "TriangleMesh",
    "VolumeReport",
    "base_point",
    "build_slab_stack",
    "convergence_profile",
    "ellipse_residual",
    "inside_mask",
    "inside_solid",
    "mesh_plane_section",
    "mesh_volume",
    "monte_carlo_volume",
    "plane_section",
    "polygon_area",
    "prism_volume",
    "profile_arc_point",
    "pyramid_volume",
    "scaling_factor",
    "scaling_factor_array",
    "sector_index",
    "slab_apothem",
    "slab_stack_mesh",
    "slice_volume",
    "solid_volume",
    "surface_point",
    "surface_sample",
    "tessellate",
    "volume_report",
    "write_obj",
    "write_section_csv",
    "write_slab_csv",
    "write_stl",
]
