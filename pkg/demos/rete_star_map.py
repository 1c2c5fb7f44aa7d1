"""
The rete: ecliptic ring and star pointers
=========================================

Loads a catalog of bright stars, places the ones a northern instrument
can carry, and reports the southern stars that fall off the plate.
"""

from pathlib import Path

from astrolabe import (
    RenderStyle,
    build_rete,
    ecliptic_circle,
    load_star_catalog,
    render_svg,
    solar_declination,
)

HERE = Path(__file__).parent
OUT = HERE / "out"
OUT.mkdir(exist_ok=True)

scale = 100.0

# The ecliptic projects to a circle tangent to both tropics: it touches
# Capricorn at the winter solstice point and Cancer at the summer one.
ring = ecliptic_circle(scale, 23.44)
print(f"ecliptic circle: center (0, {ring.center.y:.3f}), radius {ring.radius:.3f} mm")
print(f"  winter solstice on the boundary at y = {ring.center.y + ring.radius:.3f}")
print(f"  summer solstice at y = {ring.center.y - ring.radius:.3f}")

# The sun's declination swings between the tropics as it runs the ring.
print("\nsolar declination along the ecliptic:")
for lam in (0, 90, 180, 270):
    print(f"  longitude {lam:3d}  declination {solar_declination(float(lam)):+8.3f}")

# A star pointer is just the stereographic image of the star; anything
# south of the Capricorn tropic lands outside the plate and is skipped.
catalog = load_star_catalog(HERE / "data" / "bright_stars.csv")
model = build_rete(catalog, scale)
print(f"\n{len(catalog)} stars in the catalog, {len(model.pointers)} placed:")
for star, point in sorted(model.pointers, key=lambda pair: pair[0].name):
    print(f"  {star.name:12s} mag {star.magnitude:+5.2f}  ({point.x:8.3f}, {point.y:8.3f}) mm")
print("skipped:")
for star, reason in model.skipped:
    print(f"  {reason}")

svg = render_svg(model, RenderStyle())
target = OUT / "rete_bright_stars.svg"
target.write_text(svg, encoding="utf-8")
print(f"wrote {target} ({len(svg)} bytes)")
