//! Independent arithmetic for F_p and F_{p²}, used as an oracle.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// F_p, or F_p[t]/(t² + c) with the least c making it a field; elements are a + p·b.
#[derive(Clone, Copy)]
pub struct Oracle {
    p: u32,
    quad: bool,
    /// t² = r.
    r: u32,
    /// σ is conjugation (t ↦ −t) rather than the identity.
    conj: bool,
}

impl Oracle {
    pub fn new(p: u32, e: u32, conj: bool) -> Self {
        let square = |x: u32| (0..p).any(|y| y * y % p == x);
        let c = (1..p).find(|&c| !square((p - c) % p)).unwrap();
        Oracle { p, quad: e == 2, r: (p - c) % p, conj }
    }

    pub fn q(&self) -> u32 {
        if self.quad {
            self.p * self.p
        } else {
            self.p
        }
    }

    pub fn split(&self, x: u32) -> (u32, u32) {
        (x % self.p, x / self.p)
    }

    pub fn join(&self, a: u32, b: u32) -> u32 {
        a % self.p + self.p * (b % self.p)
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let ((a, b), (c, d)) = (self.split(x), self.split(y));
        self.join(a + c, b + d)
    }

    pub fn neg(&self, x: u32) -> u32 {
        let (a, b) = self.split(x);
        self.join(self.p - a, self.p - b)
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let ((a, b), (c, d)) = (self.split(x), self.split(y));
        let p = self.p;
        self.join(a * c + b * d % p * self.r, a * d + b * c)
    }

    pub fn inv(&self, x: u32) -> u32 {
        (1..self.q()).find(|&y| self.mul(x, y) == 1).unwrap()
    }

    pub fn sigma(&self, x: u32) -> u32 {
        if !self.conj {
            return x;
        }
        let (a, b) = self.split(x);
        self.join(a, self.p - b)
    }

    pub fn poly_mul(&self, f: &[u32], g: &[u32]) -> Vec<u32> {
        let mut out = vec![0; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(a, b));
            }
        }
        out
    }

    pub fn monics(&self, d: usize) -> Vec<Vec<u32>> {
        let q = self.q() as usize;
        (0..q.pow(d as u32))
            .map(|mut code| {
                let mut c: Vec<u32> = (0..d)
                    .map(|_| {
                        let x = code % q;
                        code /= q;
                        x as u32
                    })
                    .collect();
                c.push(1);
                c
            })
            .collect()
    }

    /// Monic polynomials of degree d that are products of two monics of positive degree.
    pub fn reducibles(&self, d: usize) -> BTreeSet<Vec<u32>> {
        let mut out = BTreeSet::new();
        for k in 1..=d / 2 {
            for f in self.monics(k) {
                for g in self.monics(d - k) {
                    out.insert(self.poly_mul(&f, &g));
                }
            }
        }
        out
    }

    /// σ(c₀)⁻¹ X^d σ(P)(1/X).
    pub fn dual(&self, f: &[u32]) -> Vec<u32> {
        let c0 = self.inv(self.sigma(f[0]));
        f.iter().rev().map(|&c| self.mul(c0, self.sigma(c))).collect()
    }

    pub fn self_dual_irreducibles(&self, d: usize) -> BTreeSet<Vec<u32>> {
        let red = self.reducibles(d);
        self.monics(d).into_iter().filter(|f| f[0] != 0 && !red.contains(f) && self.dual(f) == *f).collect()
    }
}
