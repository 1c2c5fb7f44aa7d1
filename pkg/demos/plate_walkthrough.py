"""
Designing a plate (tympan) step by step
=======================================

Builds the latitude-40 plate a piece at a time, printing the geometry
that a drawing would show, then renders the whole thing to SVG.
"""

import math
from pathlib import Path

from astrolabe import (
    PlateConfig,
    RenderStyle,
    almucantar_solution,
    build_plate,
    render_svg,
    tropic_radii,
    zenith_point,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# Everything scales with the equator radius; 100 mm gives a hand-sized
# instrument.  The Capricorn circle is the outer edge of the plate.
scale = 100.0
r_cap, r_eq, r_can = tropic_radii(scale, 23.44)
print("tropic radii (mm):")
print(f"  capricorn (outer edge)  {r_cap:8.3f}")
print(f"  equator                 {r_eq:8.3f}")
print(f"  cancer                  {r_can:8.3f}")
print(f"  classical ratios        {r_cap / r_eq:.2f} : 1.00 : {r_can / r_eq:.2f}")

# The horizon is just the altitude-0 circle of the local coordinate grid.
# Its two meridian crossings straddle the center once latitude < 90.
latitude = 40.0
horizon = almucantar_solution(latitude, 0.0, scale)
print(f"\nhorizon at latitude {latitude:.0f}:")
print(f"  meridian crossings y = {horizon.y_lower:.3f} and y = {horizon.y_upper:.3f} mm")
print(f"  center y = {horizon.y_center:.3f} mm, radius = {horizon.radius:.3f} mm")
print(f"  radius identity: scale/sin(lat) = {scale / math.sin(math.radians(latitude)):.3f} mm")

# The zenith pins the azimuth family: every azimuth circle must pass
# through it (and through the nadir, off the plate).
z = zenith_point(latitude, scale)
print(f"  zenith projects to (0, {z.y:.3f}) mm")

# Climbing the almucantar ladder toward the zenith, the circles shrink
# and their meridian spacing tightens; that spacing is what an engraving
# error gets measured against.
print("\naltitude circles (every 10 degrees):")
for h in range(0, 90, 10):
    sol = almucantar_solution(latitude, float(h), scale)
    print(f"  h = {h:2d}  center y = {sol.y_center:8.3f}  radius = {sol.radius:8.3f} mm")

# Assemble the full plate: boundary, tropics, horizon, the default
# 5-degree almucantars, 10-degree azimuth arcs, and the twelve unequal
# hour divisions of the night side.
cfg = PlateConfig(latitude=latitude, scale=scale)
model = build_plate(cfg)
print(f"\nplate model: {len(model.almucantars)} almucantars, "
      f"{len(model.azimuths)} azimuth arcs, {len(model.hour_lines)} hour lines")

svg = render_svg(model, RenderStyle())
target = OUT / "plate_lat40.svg"
target.write_text(svg, encoding="utf-8")
print(f"wrote {target} ({len(svg)} bytes)")
