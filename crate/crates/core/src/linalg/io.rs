//! Binary matrix format: a little-endian `u32` dimension followed by the
//! `n²` entries in row-major order, each as interleaved little-endian `f64`
//! real and imaginary parts. Files may hold several records back to back.

use std::io::{self, Read, Write};

use num_complex::Complex64;

use super::ComplexMatrix;

pub fn write_matrix<W: Write>(w: &mut W, m: &ComplexMatrix) -> io::Result<()> {
    let n = m.nrows();
    assert_eq!(m.ncols(), n, "only square matrices are serialized");
    w.write_all(&(n as u32).to_le_bytes())?;
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
    }
    Ok(())
}

/// Reads one record; `Ok(None)` at a clean end of stream.
pub fn read_matrix<R: Read>(r: &mut R) -> io::Result<Option<ComplexMatrix>> {
    let mut dim = [0u8; 4];
    match r.read_exact(&mut dim) {
        Ok(()) => {}
        Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => return Ok(None),
        Err(e) => return Err(e),
    }
    let n = u32::from_le_bytes(dim) as usize;
    if n == 0 || n > 64 {
        return Err(io::Error::new(io::ErrorKind::InvalidData, format!("bad dimension {n}")));
    }
    let mut m = ComplexMatrix::zeros(n, n);
    let mut buf = [0u8; 8];
    for i in 0..n {
        for j in 0..n {
            r.read_exact(&mut buf)?;
            let re = f64::from_le_bytes(buf);
            r.read_exact(&mut buf)?;
            let im = f64::from_le_bytes(buf);
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(Some(m))
}

pub fn read_all<R: Read>(r: &mut R) -> io::Result<Vec<ComplexMatrix>> {
    let mut out = Vec::new();
    while let Some(m) = read_matrix(r)? {
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_is_row_major_interleaved() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.5, -2.0);
        let mut buf = Vec::new();
        write_matrix(&mut buf, &m).unwrap();
        assert_eq!(buf.len(), 4 + 4 * 16);
        assert_eq!(&buf[..4], &2u32.to_le_bytes());
        // entry (0,1) is the second complex number
        assert_eq!(&buf[4 + 16..4 + 24], &1.5f64.to_le_bytes());
        assert_eq!(&buf[4 + 24..4 + 32], &(-2.0f64).to_le_bytes());
        let back = read_all(&mut buf.as_slice()).unwrap();
        assert_eq!(back, vec![m]);
    }

    #[test]
    fn truncated_record_is_an_error() {
        let mut buf = Vec::new();
        write_matrix(&mut buf, &ComplexMatrix::identity(3, 3)).unwrap();
        buf.truncate(20);
        assert!(read_matrix(&mut buf.as_slice()).is_err());
    }
}
