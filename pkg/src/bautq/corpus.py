"""Models of the worked examples, in the DSL; used by the CLI when no file is given."""

CORPUS = """\
# spheres and the Hopf fibration S^3 -> S^7 -> S^4
model S4 { gen x:4; gen y:7; d y = x^2; }
relative Hopf : S4 -> HopfTotal { fiber z:3; D z = x; }

model S2 { gen x:2; gen y:3; d y = x^2; }
model S6 { gen x:6; gen y:11; d y = x^2; }
model CP2 { gen x:2; gen y:5; d y = x^3; }

# S^5 x S^7 -> X -> S^3, non-trivial
model S3 { gen v1:3; }
relative Counter1 : S3 -> X1 { fiber w1:5; fiber w2:7; D w2 = v1*w1; }

# S^7 x S^9 -> X' -> Y', a_f has a section but the fibration is not trivial
model Y2 { gen v1:3; gen v2:3; gen v3:5; d v3 = v1*v2; }
relative Counter2 : Y2 -> X2 { fiber w1:7; fiber w2:9; D w2 = v1*w1; }

# S^11 x S^23 -> X -> SU(6)/SU(3)xSU(3)
model SU6 {
  gen x1:4; gen x2:6; gen y1:7; gen y2:9; gen y3:11;
  d y1 = x1^2; d y2 = x1*x2; d y3 = x2^2;
}
relative SU6F : SU6 -> X6 { fiber w1:11; fiber w2:23; D w2 = (x1*y2 - x2*y1)*w1; }

# lifting over CP^2 = S^2 with a 4-cell
model Sv { gen v:3; }
relative F : Sv -> XF { fiber w1:3; fiber w2:5; D w2 = v*w1; }
relative Ftriv : Sv -> XFtriv { fiber w1:3; fiber w2:5; }
quillen LCP2 { gen u1:1; gen u2:3; d u2 = [u1,u1]; }
problem CP2 { relative F; quillen LCP2; cell u2; hX u1 = 0; hY u1 = 0; hY u2 = (v,1); }
problem CP2triv { relative Ftriv; quillen LCP2; cell u2; hX u1 = 0; hY u1 = 0; hY u2 = (v,1); }

# Borel-type fibrations over tori
model Y5a {
  gen v1:2; gen v2:2; gen v3:5; gen v4:5; gen v5:5;
  d v3 = v1^3; d v4 = v1^2*v2; d v5 = v2^3;
}
relative Ex5a : Y5a -> X5a { fiber w:5; D w = v1*v2^2; }
model S3xS3 { gen v1:3; gen v2:3; }
relative Ex5b : S3xS3 -> X5b { fiber w:5; D w = v1*v2; }
problem Lift5a { relative Ex5a; quillen LCP2; cell u2; hX u1 = 0; hY u1 = 0; hY u2 = 0; }
problem Lift5b { relative Ex5b; quillen LCP2; cell u2; hX u1 = 0; hY u1 = 0; hY u2 = (v1,1); }

# free circle action on S^3
borel S1onS3 : S3 { torus t; D v1 = t^2; }
borel TrivS3 : S3 { torus t; }

# a pure model whose cohomology Q[x,y]/(y^2, xy, x^2) carries a negative derivation
model NonCI { gen x:6; gen y:2; gen u:3; gen p:7; gen q:11; d u = y^2; d p = x*y; d q = x^2; }
"""
