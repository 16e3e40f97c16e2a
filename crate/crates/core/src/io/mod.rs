//! File formats, reports, SVG output and verification suites.

pub mod points;
pub mod report;
pub mod svg;
pub mod verify;

pub use points::{parse_points, read_points, render_points, write_points};
pub use report::{AnalysisSection, GraphReport};
pub use svg::{render_svg, SvgOptions};
pub use verify::{run_suite, Check, Suite, VerificationOutcome, VerifyParams};
