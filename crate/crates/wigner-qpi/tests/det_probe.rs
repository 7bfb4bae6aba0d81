#[test]
fn determinism_probe2() {
    use wigner_qpi::cli::{cmd_spectrum, OutputFormat, Tolerances};
    use wigner_qpi::quadrature::QuadratureSpec;
    use wigner_qpi::spectra::{RegionKind, Spectrum};
    let spec = QuadratureSpec::default();
    let again = Spectrum::compute(RegionKind::Disk, 1.0, 3, &spec).unwrap();
    eprintln!("direct bits: {}", again.values[1].to_bits());
    let out = cmd_spectrum(RegionKind::Disk, 1.0, 3, Tolerances::default(), OutputFormat::Json).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    let v = parsed["rows"][1]["value"].as_f64().unwrap();
    eprintln!("via cmd bits: {}  equal={}", v.to_bits(), v == again.values[1]);
    // also check raw string in json
    for line in out.lines() { if line.contains("-0.1036") { eprintln!("json line: {}", line.trim()); } }
}
