//! CSV writers for spectra and bench records.

use std::io::Write;

use partcount_core::spectral::Spectrum;

use crate::bench::BenchRecord;

/// Columns `t,re,im`.
pub fn write_samples<W: Write>(out: W, spectrum: &Spectrum) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "re", "im"])?;
    for (t, v) in spectrum.times.iter().zip(&spectrum.values) {
        w.write_record([t.to_string(), v.re.to_string(), v.im.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `omega,magnitude`.
pub fn write_scan<W: Write>(out: W, spectrum: &Spectrum) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["omega", "magnitude"])?;
    for (omega, mag) in &spectrum.omega_grid {
        w.write_record([omega.to_string(), mag.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `n,b,idx,n_s,solvable,elapsed_ns`.
pub fn write_bench<W: Write>(out: W, records: &[BenchRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record(["n", "b", "idx", "n_s", "solvable", "elapsed_ns"])?;
    }
    w.flush()?;
    Ok(())
}
