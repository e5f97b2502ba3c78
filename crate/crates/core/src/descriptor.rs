//! Text descriptors for GBFs, e.g. `diffusion:t=10` or `poly:1,0.5`.
//!
//! Grammar:
//!
//! ```text
//! unity
//! laplacian
//! auglap:delta=<f>
//! poly:<f>(,<f>)*
//! spline:eps=<f>,s=<f>
//! pspline:s=<f>
//! diffusion:t=<f>
//! polydecay:s=<f>
//! bandlimited:M=<int>|N
//! ```
//!
//! `bandlimited:M=N` ties the bandwidth to the number of samples and is
//! resolved by [`GbfSpec::build_with_samples`].

use std::fmt;
use std::str::FromStr;

use crate::error::{GbfError, Result};
use crate::gbf::{
    augmented_laplacian_gbf, bandlimited_gbf, diffusion_gbf, laplacian_gbf, laplacian_polynomial_gbf, polydecay_gbf,
    pseudoinverse_spline_gbf, unity_gbf, variational_spline_gbf, Gbf,
};
use crate::spectral::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    Fixed(usize),
    SampleCount,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GbfSpec {
    Unity,
    Laplacian,
    AugmentedLaplacian { delta: f64 },
    Polynomial(Vec<f64>),
    Spline { eps: f64, s: f64 },
    PseudoinverseSpline { s: f64 },
    Diffusion { t: f64 },
    PolyDecay { s: f64 },
    Bandlimited(Bandwidth),
}

const KINDS: &str = "one of unity, laplacian, auglap, poly, spline, pspline, diffusion, polydecay, bandlimited";

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, expected: impl Into<String>) -> Result<T> {
        Err(GbfError::Descriptor {
            position: self.pos,
            expected: expected.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, token: &str) -> Result<()> {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            self.err(format!("'{token}'"))
        }
    }

    fn ident(&mut self) -> &'a str {
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn number_text(&mut self) -> &'a str {
        let rest = self.rest();
        let len = rest.find(|c: char| c == ',' || c.is_whitespace()).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn float(&mut self) -> Result<f64> {
        let start = self.pos;
        let text = self.number_text();
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => {
                self.pos = start;
                self.err("a finite number")
            }
        }
    }

    fn key_float(&mut self, key: &str) -> Result<f64> {
        self.eat(key)?;
        self.eat("=")?;
        self.float()
    }

    fn end(&self) -> Result<()> {
        if self.rest().is_empty() {
            Ok(())
        } else {
            self.err("end of descriptor")
        }
    }
}

impl FromStr for GbfSpec {
    type Err = GbfError;

    fn from_str(src: &str) -> Result<Self> {
        let mut c = Cursor { src, pos: 0 };
        let kind = c.ident();
        let spec = match kind {
            "unity" => GbfSpec::Unity,
            "laplacian" => GbfSpec::Laplacian,
            "auglap" => {
                c.eat(":")?;
                GbfSpec::AugmentedLaplacian {
                    delta: c.key_float("delta")?,
                }
            }
            "poly" => {
                c.eat(":")?;
                let mut coeffs = vec![c.float()?];
                while c.rest().starts_with(',') {
                    c.eat(",")?;
                    coeffs.push(c.float()?);
                }
                GbfSpec::Polynomial(coeffs)
            }
            "spline" => {
                c.eat(":")?;
                let eps = c.key_float("eps")?;
                c.eat(",")?;
                let s = c.key_float("s")?;
                GbfSpec::Spline { eps, s }
            }
            "pspline" => {
                c.eat(":")?;
                GbfSpec::PseudoinverseSpline { s: c.key_float("s")? }
            }
            "diffusion" => {
                c.eat(":")?;
                GbfSpec::Diffusion { t: c.key_float("t")? }
            }
            "polydecay" => {
                c.eat(":")?;
                GbfSpec::PolyDecay { s: c.key_float("s")? }
            }
            "bandlimited" => {
                c.eat(":")?;
                c.eat("M")?;
                c.eat("=")?;
                if c.rest() == "N" {
                    c.eat("N")?;
                    GbfSpec::Bandlimited(Bandwidth::SampleCount)
                } else {
                    let start = c.pos;
                    match c.number_text().parse::<usize>() {
                        Ok(m) => GbfSpec::Bandlimited(Bandwidth::Fixed(m)),
                        Err(_) => {
                            c.pos = start;
                            return c.err("a non-negative integer or N");
                        }
                    }
                }
            }
            _ => {
                c.pos = 0;
                return c.err(KINDS);
            }
        };
        c.end()?;
        Ok(spec)
    }
}

impl fmt::Display for GbfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GbfSpec::Unity => write!(f, "unity"),
            GbfSpec::Laplacian => write!(f, "laplacian"),
            GbfSpec::AugmentedLaplacian { delta } => write!(f, "auglap:delta={delta}"),
            GbfSpec::Polynomial(c) => {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            GbfSpec::Spline { eps, s } => write!(f, "spline:eps={eps},s={s}"),
            GbfSpec::PseudoinverseSpline { s } => write!(f, "pspline:s={s}"),
            GbfSpec::Diffusion { t } => write!(f, "diffusion:t={t}"),
            GbfSpec::PolyDecay { s } => write!(f, "polydecay:s={s}"),
            GbfSpec::Bandlimited(Bandwidth::Fixed(m)) => write!(f, "bandlimited:M={m}"),
            GbfSpec::Bandlimited(Bandwidth::SampleCount) => write!(f, "bandlimited:M=N"),
        }
    }
}

impl GbfSpec {
    /// Builds the GBF. `bandlimited:M=N` needs [`Self::build_with_samples`].
    pub fn build(&self, spectrum: &Spectrum) -> Result<Gbf> {
        match self {
            GbfSpec::Bandlimited(Bandwidth::SampleCount) => {
                Err(GbfError::InvalidParam("bandlimited:M=N needs a sample count".into()))
            }
            _ => self.build_with_samples(spectrum, 0),
        }
    }

    pub fn build_with_samples(&self, spectrum: &Spectrum, n_samples: usize) -> Result<Gbf> {
        match self {
            GbfSpec::Unity => Ok(unity_gbf(spectrum)),
            GbfSpec::Laplacian => Ok(laplacian_gbf(spectrum)),
            GbfSpec::AugmentedLaplacian { delta } => augmented_laplacian_gbf(spectrum, *delta),
            GbfSpec::Polynomial(c) => laplacian_polynomial_gbf(spectrum, c),
            GbfSpec::Spline { eps, s } => variational_spline_gbf(spectrum, *eps, *s),
            GbfSpec::PseudoinverseSpline { s } => pseudoinverse_spline_gbf(spectrum, *s),
            GbfSpec::Diffusion { t } => diffusion_gbf(spectrum, *t),
            GbfSpec::PolyDecay { s } => polydecay_gbf(spectrum, *s),
            GbfSpec::Bandlimited(Bandwidth::Fixed(m)) => bandlimited_gbf(spectrum, *m),
            GbfSpec::Bandlimited(Bandwidth::SampleCount) => bandlimited_gbf(spectrum, n_samples),
        }
    }
}
