//! Checkpoint files: a 32-byte header (magic, n, L, t, epsilon) followed by
//! raw little-endian f64 arrays. Axisymmetric checkpoints append a grid-type
//! tag byte and the axial extent after the header; their `n` field packs
//! (n_r << 16) | n_z.

use crate::axisym::{AxiState, CylGrid};
use crate::error::{Error, Result};
use crate::solver2d::SimState2D;
use crate::spectral::{PeriodicGrid, SpectralField};
use ndarray::Array2;
use std::io::{Read, Write};
use std::path::Path;

const MAGIC: u32 = u32::from_le_bytes(*b"WNSC");
const TAG_AXI: u8 = 1;

fn header_bytes(n: u32, length: f64, t: f64, epsilon: f64) -> [u8; 32] {
    let mut h = [0u8; 32];
    h[0..4].copy_from_slice(&MAGIC.to_le_bytes());
    h[4..8].copy_from_slice(&n.to_le_bytes());
    h[8..16].copy_from_slice(&length.to_le_bytes());
    h[16..24].copy_from_slice(&t.to_le_bytes());
    h[24..32].copy_from_slice(&epsilon.to_le_bytes());
    h
}

fn parse_header(h: &[u8; 32], path: &Path) -> Result<(u32, f64, f64, f64)> {
    let magic = u32::from_le_bytes(h[0..4].try_into().unwrap());
    if magic != MAGIC {
        return Err(Error::Format { path: path.display().to_string(), msg: "bad magic".into() });
    }
    Ok((
        u32::from_le_bytes(h[4..8].try_into().unwrap()),
        f64::from_le_bytes(h[8..16].try_into().unwrap()),
        f64::from_le_bytes(h[16..24].try_into().unwrap()),
        f64::from_le_bytes(h[24..32].try_into().unwrap()),
    ))
}

fn write_f64s<W: Write>(w: &mut W, data: &Array2<f64>) -> Result<()> {
    for v in data.iter() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn read_f64s<R: Read>(r: &mut R, rows: usize, cols: usize, path: &Path) -> Result<Array2<f64>> {
    let mut buf = vec![0u8; rows * cols * 8];
    r.read_exact(&mut buf).map_err(|_| Error::Format {
        path: path.display().to_string(),
        msg: format!("truncated payload, wanted {} f64s", rows * cols),
    })?;
    let vals: Vec<f64> = buf
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Array2::from_shape_vec((rows, cols), vals)
        .map_err(|e| Error::Format { path: path.display().to_string(), msg: e.to_string() })
}

pub fn write_checkpoint_2d(path: &Path, state: &SimState2D) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    f.write_all(&header_bytes(state.grid.n as u32, state.grid.length, state.t, state.epsilon))?;
    write_f64s(&mut f, state.u[0].values())?;
    write_f64s(&mut f, state.u[1].values())?;
    Ok(())
}

pub fn read_checkpoint_2d(path: &Path) -> Result<(SimState2D, PeriodicGrid)> {
    let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut h = [0u8; 32];
    f.read_exact(&mut h)?;
    let (n, length, t, epsilon) = parse_header(&h, path)?;
    let grid = PeriodicGrid::new(n as usize, length)?;
    let u0 = read_f64s(&mut f, grid.n, grid.n, path)?;
    let u1 = read_f64s(&mut f, grid.n, grid.n, path)?;
    let state = SimState2D::new(
        t,
        [SpectralField::from_values(grid, u0), SpectralField::from_values(grid, u1)],
        epsilon,
    );
    Ok((state, grid))
}

pub fn write_checkpoint_axi(path: &Path, state: &AxiState) -> Result<()> {
    let g = state.grid;
    if g.n_r > u16::MAX as usize || g.n_z > u16::MAX as usize {
        return Err(Error::contract("axisym checkpoint packs grid sizes into 16 bits"));
    }
    let n = ((g.n_r as u32) << 16) | g.n_z as u32;
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    f.write_all(&header_bytes(n, g.r_extent, state.t, 0.0))?;
    f.write_all(&[TAG_AXI])?;
    f.write_all(&g.z_extent.to_le_bytes())?;
    write_f64s(&mut f, &state.eta)?;
    Ok(())
}

pub fn read_checkpoint_axi(path: &Path) -> Result<AxiState> {
    let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut h = [0u8; 32];
    f.read_exact(&mut h)?;
    let (n, r_extent, t, _eps) = parse_header(&h, path)?;
    let mut tag = [0u8; 1];
    f.read_exact(&mut tag)?;
    if tag[0] != TAG_AXI {
        return Err(Error::Format { path: path.display().to_string(), msg: "not an axisym checkpoint".into() });
    }
    let mut zb = [0u8; 8];
    f.read_exact(&mut zb)?;
    let z_extent = f64::from_le_bytes(zb);
    let (n_r, n_z) = ((n >> 16) as usize, (n & 0xffff) as usize);
    let grid = CylGrid::new(n_r, n_z, r_extent, z_extent)?;
    let eta = read_f64s(&mut f, n_r, n_z, path)?;
    AxiState::from_eta(t, eta, grid)
}
