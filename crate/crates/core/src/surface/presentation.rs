//! The standard presentation of a closed orientable surface group.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// Generators `a1, b1, ..., ag, bg` and the single relator `prod [ai, bi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceGroupPresentation {
    genus: u32,
    relator: Vec<Letter>,
}

pub fn standard_presentation(genus: u32) -> Result<SurfaceGroupPresentation> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let mut relator = Vec::with_capacity(4 * genus as usize);
    for k in 0..genus as usize {
        let (a, b) = (2 * k, 2 * k + 1);
        for (generator, inverse) in [(a, false), (b, false), (a, true), (b, true)] {
            relator.push(Letter { generator, inverse });
        }
    }
    Ok(SurfaceGroupPresentation { genus, relator })
}

impl SurfaceGroupPresentation {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn generator_count(&self) -> usize {
        2 * self.genus as usize
    }

    pub fn relator(&self) -> &[Letter] {
        &self.relator
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    pub fn generator_name(&self, i: usize) -> String {
        let kind = if i.is_multiple_of(2) { 'a' } else { 'b' };
        format!("{kind}{}", i / 2 + 1)
    }
}

impl fmt::Display for SurfaceGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.relator {
            write!(f, "{}", self.generator_name(l.generator))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
            f.write_str(" ")?;
        }
        Ok(())
    }
}
