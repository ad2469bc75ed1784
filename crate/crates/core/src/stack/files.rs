//! Stacks on disk: a `manifest.csv` plus one image file per position.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{FocusStack, StackError};
use crate::imageio::{
    decode_image, encode_pgm, read_manifest, write_manifest, ImageError, ManifestError,
};

pub const MANIFEST_NAME: &str = "manifest.csv";

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: {source}", path.display())]
    Decode {
        path: PathBuf,
        #[source]
        source: ImageError,
    },
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error(transparent)]
    Stack(#[from] StackError),
}

/// Reads a manifest and every image it lists. Image paths are relative to
/// the manifest's directory.
pub fn load_stack(manifest_path: &Path) -> Result<FocusStack, LoadError> {
    let text = fs::read_to_string(manifest_path).map_err(|source| LoadError::Io {
        path: manifest_path.to_path_buf(),
        source,
    })?;
    let base = manifest_path.parent().unwrap_or(Path::new(""));
    let entries = read_manifest(&text, base)?;
    let mut images = Vec::with_capacity(entries.len());
    for entry in entries {
        let bytes = fs::read(&entry.path).map_err(|source| LoadError::Io {
            path: entry.path.clone(),
            source,
        })?;
        let image = decode_image(&bytes, None).map_err(|source| LoadError::Decode {
            path: entry.path.clone(),
            source,
        })?;
        images.push((entry.position_mm, image));
    }
    Ok(FocusStack::new(images)?)
}

/// Writes every image as 8-bit PGM (`frame_000.pgm`, ...) plus the manifest
/// into `dir`, creating it if needed. Returns the manifest path.
pub fn save_stack(stack: &FocusStack, dir: &Path) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let digits = (stack.len() - 1).to_string().len().max(3);
    let names: Vec<String> = (0..stack.len())
        .map(|i| format!("frame_{i:0digits$}.pgm"))
        .collect();
    for (entry, name) in stack.entries().iter().zip(&names) {
        fs::write(dir.join(name), encode_pgm(&entry.image))?;
    }
    let manifest = write_manifest(stack.positions().zip(names.iter().map(String::as_str)));
    let path = dir.join(MANIFEST_NAME);
    fs::write(&path, manifest)?;
    Ok(path)
}
