"""Exact-arithmetic tools for deciding Liouvillian integrability of
second-order linear ODEs and planar Riccati foliations.

Subpackages by layer:
  scalars / poly / linalg / ratfunc / bivar  -- exact algebra core
  odeforms                                   -- normal-form transformations
  kovacic                                    -- the decision algorithm
  darboux                                    -- invariant curves, integrating
                                                factors, first integrals
  specialfn                                  -- closed-form integrability
                                                criteria for classical families
  applications                               -- end-to-end worked analyses
  exprparse / reports / cli                  -- user-facing surface
"""

__version__ = "0.1.0"
