use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rgb(pub u8, pub u8, pub u8);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed colour {0:?}, expected #rrggbb")]
pub struct ColorParseError(pub String);

impl Rgb {
    pub fn parse_hex(s: &str) -> Result<Self, ColorParseError> {
        let err = || ColorParseError(s.into());
        let hex = s.strip_prefix('#').ok_or_else(err)?;
        if hex.len() != 6 || !hex.is_ascii() {
            return Err(err());
        }
        let byte = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| err());
        Ok(Rgb(byte(0)?, byte(2)?, byte(4)?))
    }

    /// `hue` in degrees, `saturation` and `lightness` in 0..=1.
    pub fn from_hsl(hue: f64, saturation: f64, lightness: f64) -> Self {
        let h = libm::fmod(libm::fmod(hue, 360.0) + 360.0, 360.0) / 60.0;
        let c = (1.0 - libm::fabs(2.0 * lightness - 1.0)) * saturation;
        let x = c * (1.0 - libm::fabs(libm::fmod(h, 2.0) - 1.0));
        let (r, g, b) = match h as u32 {
            0 => (c, x, 0.0),
            1 => (x, c, 0.0),
            2 => (0.0, c, x),
            3 => (0.0, x, c),
            4 => (x, 0.0, c),
            _ => (c, 0.0, x),
        };
        let m = lightness - c / 2.0;
        let channel = |v: f64| libm::round((v + m) * 255.0).clamp(0.0, 255.0) as u8;
        Rgb(channel(r), channel(g), channel(b))
    }

    /// (hue degrees, saturation, lightness).
    pub fn to_hsl(self) -> (f64, f64, f64) {
        let r = f64::from(self.0) / 255.0;
        let g = f64::from(self.1) / 255.0;
        let b = f64::from(self.2) / 255.0;
        let max = r.max(g).max(b);
        let min = r.min(g).min(b);
        let l = (max + min) / 2.0;
        let d = max - min;
        if d == 0.0 {
            return (0.0, 0.0, l);
        }
        let s = d / (1.0 - libm::fabs(2.0 * l - 1.0));
        let h = if max == r {
            60.0 * libm::fmod((g - b) / d + 6.0, 6.0)
        } else if max == g {
            60.0 * ((b - r) / d + 2.0)
        } else {
            60.0 * ((r - g) / d + 4.0)
        };
        (h, s, l)
    }

    /// WCAG relative luminance.
    pub fn luminance(self) -> f64 {
        let lin = |c: u8| {
            let c = f64::from(c) / 255.0;
            if c <= 0.04045 {
                c / 12.92
            } else {
                libm::pow((c + 0.055) / 1.055, 2.4)
            }
        };
        0.2126 * lin(self.0) + 0.7152 * lin(self.1) + 0.0722 * lin(self.2)
    }

    pub fn contrast(self, other: Rgb) -> f64 {
        let (a, b) = (self.luminance(), other.luminance());
        (a.max(b) + 0.05) / (a.min(b) + 0.05)
    }

    pub fn hex(self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }
}

/// Smallest angle between two hues, in degrees.
pub fn hue_distance(a: f64, b: f64) -> f64 {
    let d = libm::fabs(libm::fmod(a - b, 360.0));
    if d > 180.0 {
        360.0 - d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip() {
        let c = Rgb::parse_hex("#e8a0ff").unwrap();
        assert_eq!(c, Rgb(0xe8, 0xa0, 0xff));
        assert_eq!(c.hex(), "#e8a0ff");
        assert!(Rgb::parse_hex("e8a0ff").is_err());
        assert!(Rgb::parse_hex("#e8a0f").is_err());
    }

    #[test]
    fn hsl_primaries() {
        assert_eq!(Rgb::from_hsl(0.0, 1.0, 0.5), Rgb(255, 0, 0));
        assert_eq!(Rgb::from_hsl(120.0, 1.0, 0.5), Rgb(0, 255, 0));
        assert_eq!(Rgb::from_hsl(240.0, 1.0, 0.5), Rgb(0, 0, 255));
        assert_eq!(Rgb::from_hsl(77.0, 0.0, 1.0), Rgb(255, 255, 255));
    }

    #[test]
    fn contrast_extremes() {
        let white = Rgb(255, 255, 255);
        let black = Rgb(0, 0, 0);
        assert!((white.contrast(black) - 21.0).abs() < 1e-9);
        assert_eq!(white.contrast(white), 1.0);
    }

    #[test]
    fn hue_wraps() {
        assert_eq!(hue_distance(350.0, 10.0), 20.0);
        assert_eq!(hue_distance(45.0, 330.0), 75.0);
    }
}
