"""Sample points on a cubic surface and write them as a points file.

usage: python scripts/export_points.py Z OUT [SEED] [fermat|random]
"""
import os
import sys
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from mrclab.lib.cubic_lab import make_surface, sample_points
from mrclab.lib.ideal_ops import write_points
from mrclab.lib.settings import get_settings

settings = get_settings()
z, out = int(sys.argv[1]), sys.argv[2]
seed = int(sys.argv[3]) if len(sys.argv) > 3 else settings.seed
kind = sys.argv[4] if len(sys.argv) > 4 else "fermat"

surface = make_surface(kind, settings.prime, seed)
points = sample_points(surface, z, seed)
write_points(out, points, comment=f"{z} points on {surface.f} over F_{settings.prime}, seed {seed}")
print(f"Wrote {len(points)} points to {out}")
