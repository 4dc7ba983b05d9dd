//! Writes an SVG of R̃ level curves and prints the base quadrilateral
//! of the I pencil.
//!
//! cargo run --example pencil_figure -- rtilde.svg

use modeq::pencils::{
    base_points, critical_levels, sample_level_curve, slopes_and_cyclicity, to_svg, Level, PencilFamily, Window,
};
use modeq::scalars::{int, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "rtilde.svg".into());
    let family = PencilFamily::Rtilde;
    let window = Window::new(int(-2), int(8), int(-4), int(4))?;
    let levels = [int(-9), int(-3), int(-1), int(0), rat(1, 7), int(4)].map(Level::Finite);
    let mut curves = Vec::new();
    for level in levels.iter().chain([Level::Infinity].iter()) {
        let c = sample_level_curve(&family, level, &window, 41)?;
        println!("R̃ = {:<4} {:<14} {} points", level.to_string(), c.class.to_string(), c.points.len());
        curves.push(c);
    }
    std::fs::write(&path, to_svg(&family, &curves, &window)?)?;
    println!("wrote {path}");

    let ip = PencilFamily::Ipencil(rat(2, 7));
    let quad = slopes_and_cyclicity(&ip)?;
    println!("{}: base points {:?}", ip.label(), base_points(&ip)?.iter().map(|(x, y)| format!("({x}, {y})")).collect::<Vec<_>>());
    println!("  cyclic = {}, trapezoid = {}", quad.cyclic, quad.trapezoid);
    let crit = critical_levels(&ip)?;
    let show = |v: &[Level]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ");
    println!("  degenerate levels: {}; parabolic: {}", show(&crit.degenerate), show(&crit.parabolic));
    Ok(())
}
