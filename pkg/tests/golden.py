"""Reference series and tensors used by the golden tests.

Every value is a frozen literal; tests compare computed results against
these strings after parsing them with ``parse_poly``.
"""

TELEPORT_UX = (
    "1 - 2/3*c1 - 14/15*c2 - 2*r - 14/15*m + 1/9*c1^2 + 28/45*c1*c2 + 4/3*c1*r + 28/45*c1*m + 28/15*c2*r + 196/225*c2*m + 28/15*r*m - 14/135*c1^2*c2 - 2/9*c1^2*r - 14/135*c1^2*m - 56/45*c1*c2*r - 392/675*c1*c2*m - 56/45*c1*r*m - 392/225*c2*r*m + 28/135*c1^2*c2*r + 196/2025*c1^2*c2*m + 28/135*c1^2*r*m + 784/675*c1*c2*r*m - 392/2025*c1^2*c2*r*m"
)

TELEPORT_UY = (
    "1 - 2/3*c1 - 14/15*c2 - 4*r - 14/15*m + 1/9*c1^2 + 28/45*c1*c2 + 8/3*c1*r + 28/45*c1*m + 56/15*c2*r + 196/225*c2*m + 4*r^2 + 56/15*r*m - 14/135*c1^2*c2 - 4/9*c1^2*r - 14/135*c1^2*m - 112/45*c1*c2*r - 392/675*c1*c2*m - 8/3*c1*r^2 - 112/45*c1*r*m - 56/15*c2*r^2 - 784/225*c2*r*m - 56/15*r^2*m + 56/135*c1^2*c2*r + 196/2025*c1^2*c2*m + 4/9*c1^2*r^2 + 56/135*c1^2*r*m + 112/45*c1*c2*r^2 + 1568/675*c1*c2*r*m + 112/45*c1*r^2*m + 784/225*c2*r^2*m - 56/135*c1^2*c2*r^2 - 784/2025*c1^2*c2*r*m - 56/135*c1^2*r^2*m - 1568/675*c1*c2*r^2*m + 784/2025*c1^2*c2*r^2*m"
)

TELEPORT_PI = (
    "1 - 1/2*c1 - 7/10*c2 - 2*r - 7/10*m + 1/12*c1^2 + 7/15*c1*c2 + 4/3*c1*r + 7/15*c1*m + 28/15*c2*r + 49/75*c2*m + r^2 + 28/15*r*m - 7/90*c1^2*c2 - 2/9*c1^2*r - 7/90*c1^2*m - 56/45*c1*c2*r - 98/225*c1*c2*m - 2/3*c1*r^2 - 56/45*c1*r*m - 14/15*c2*r^2 - 392/225*c2*r*m - 14/15*r^2*m + 28/135*c1^2*c2*r + 49/675*c1^2*c2*m + 1/9*c1^2*r^2 + 28/135*c1^2*r*m + 28/45*c1*c2*r^2 + 784/675*c1*c2*r*m + 28/45*c1*r^2*m + 196/225*c2*r^2*m - 14/135*c1^2*c2*r^2 - 392/2025*c1^2*c2*r*m - 14/135*c1^2*r^2*m - 392/675*c1*c2*r^2*m + 196/2025*c1^2*c2*r^2*m"
)

TELEPORT_PX = (
    "1/6*c1 + 7/30*c2 + r + 7/30*m - 1/36*c1^2 - 7/45*c1*c2 - 2/3*c1*r - 7/45*c1*m - 14/15*c2*r - 49/225*c2*m - r^2 - 14/15*r*m + 7/270*c1^2*c2 + 1/9*c1^2*r + 7/270*c1^2*m + 28/45*c1*c2*r + 98/675*c1*c2*m + 2/3*c1*r^2 + 28/45*c1*r*m + 14/15*c2*r^2 + 196/225*c2*r*m + 14/15*r^2*m - 14/135*c1^2*c2*r - 49/2025*c1^2*c2*m - 1/9*c1^2*r^2 - 14/135*c1^2*r*m - 28/45*c1*c2*r^2 - 392/675*c1*c2*r*m - 28/45*c1*r^2*m - 196/225*c2*r^2*m + 14/135*c1^2*c2*r^2 + 196/2025*c1^2*c2*r*m + 14/135*c1^2*r^2*m + 392/675*c1*c2*r^2*m - 196/2025*c1^2*c2*r^2*m"
)

TELEPORT_PY = (
    "1/6*c1 + 7/30*c2 + 7/30*m - 1/36*c1^2 - 7/45*c1*c2 - 7/45*c1*m - 49/225*c2*m + r^2 + 7/270*c1^2*c2 + 7/270*c1^2*m + 98/675*c1*c2*m - 2/3*c1*r^2 - 14/15*c2*r^2 - 14/15*r^2*m - 49/2025*c1^2*c2*m + 1/9*c1^2*r^2 + 28/45*c1*c2*r^2 + 28/45*c1*r^2*m + 196/225*c2*r^2*m - 14/135*c1^2*c2*r^2 - 14/135*c1^2*r^2*m - 392/675*c1*c2*r^2*m + 196/2025*c1^2*c2*r^2*m"
)

PERFECT_STAB_SUM = (
    "w_c^4*w_m^4*w_z^5 + 3*c^4*m^4*w_z*z^4 + 12*c^3*m^4*w_c*w_z*z^4"
)

PERFECT_NORM_SUM = (
    "w_c^4*w_m^4*w_z^5 + 12*c^3*m^4*w_c*w_z^2*z^3 + 18*c^2*m^4*w_c^2*w_z^2*z^3 + 3*c^4*m^4*w_z*z^4 + 12*c^3*m^4*w_c*w_z*z^4 + 18*c^4*m^4*z^5"
)

PERFECT_B = (
    "1 + 60*m + 960*m*z + 12*c*z + 24390*m^2 + 768*c*m + 30*z^3 + 5760*m*z^2 + 72*c*z^2 + 365760*m^2*z + 11472*c*m*z + 54*c^2*z + 4145340*m^3 + 292608*c*m^2 + 3456*c^2*m + 12*c^3"
)

PERFECT_A = (
    "1 + 12*m + 240*m*z + 12*c*z + 6102*m^2 + 192*c*m + 1440*m*z^2 + 91440*m^2*z + 2832*c*m*z + 1036332*m^3 + 73152*c*m^2 + 864*c^2*m"
)

PERFECT_DIFF = (
    "48*m + 720*m*z + 18288*m^2 + 576*c*m + 30*z^3 + 4320*m*z^2 + 72*c*z^2 + 274320*m^2*z + 8640*c*m*z + 54*c^2*z + 3109008*m^3 + 219456*c*m^2 + 2592*c^2*m + 12*c^3"
)

D3_STAB_SUM = (
    "1 + 4*m4^2*m2*c^11*z^2 + 8*m4^4*m2^2*c^20*z^4 + 8*m4^4*m2^2*c^21*z^4 + 4*m4^3*m2^2*c^22*z^4 + 2*m4^4*m2^2*c^22*z^4 + 32*m4^4*m2^3*c^31*z^6 + 32*m4^4*m2^3*c^32*z^6 + 8*m4^4*m2^4*c^32*z^6 + 4*m4^4*m2^3*c^33*z^6 + 16*m4^4*m2^4*c^33*z^6 + 8*m4^4*m2^4*c^34*z^6 + 56*m4^4*m2^4*c^42*z^8 + 56*m4^4*m2^4*c^43*z^8 + 17*m4^4*m2^4*c^44*z^8"
)

D3_B = (
    "1 + 16*m + 438*c^2 + 188*c*z + 1952*c*m + 4*z^2 + 368*m*z + 3228*m^2 + 5432*c^3 + 3358*c^2*z + 92600*c^2*m + 432*c*z^2 + 36160*c*z*m + 395744*c*m^2 + 2832*m*z^2 + 74600*m^2*z + 403280*m^3 + 24*z^3"
)

D3_A = (
    "1 + 16*m + 438*c^2 + 188*c*z + 1320*c*m + 4*z^2 + 256*m*z + 1516*m^2 + 1824*c^3 + 1316*c^2*z + 44224*c^2*m + 88*c*z^2 + 17992*c*z*m + 150744*c*m^2 + 1264*m*z^2 + 28880*m^2*z + 114192*m^3"
)

D3_DIFF = (
    "632*c*m + 112*m*z + 1712*m^2 + 3608*c^3 + 2042*c^2*z + 48376*c^2*m + 344*c*z^2 + 18168*c*z*m + 245000*c*m^2 + 1568*m*z^2 + 45720*m^2*z + 289088*m^3 + 24*z^3"
)

D5_B = (
    "1 + 40*m + 8*z^2 + 704*m*z + 4892*m^2 + 3656*m*z^2 + 106568*m^2*z + 606632*m^3 + 72*z^4 + 16960*m*z^3 + 1156208*m^2*z^2 + 19015984*m^3*z + 94658202*m^4 + 160*z^5 + 73040*m*z^4 + 8544672*m^2*z^3 + 292544120*m^3*z^2 + 3723068248*m^4*z + 16168935704*m^5"
)

D5_A = (
    "1 + 40*m + 8*z^2 + 704*m*z + 4892*m^2 + 3656*m*z^2 + 103440*m^2*z + 548712*m^3 + 72*z^4 + 15424*m*z^3 + 1046000*m^2*z^2 + 15997312*m^3*z + 71438618*m^4 + 52816*m*z^4 + 6800352*m^2*z^3 + 222326424*m^3*z^2 + 2569524432*m^4*z + 9919808920*m^5"
)

D5_DIFF = (
    "57920*m^3 + 3128*m^2*z + 110208*m^2*z^2 + 3018672*m^3*z + 1536*m*z^3 + 1744320*m^2*z^3 + 20224*m*z^4 + 6249126784*m^5 + 1153543816*m^4*z + 23219584*m^4 + 70217696*m^3*z^2 + 160*z^5"
)

# Per-generator raw monomials of the d = 3 rotated surface code stabilizers
# (w-variables set to one); key is the generator string.
D3_TABLE = {
    "ZZIZZIIII": "m4^4*m2^2*c^20*z^4",
    "IIIIZZIZZ": "m4^4*m2^2*c^20*z^4",
    "IXXIXXIII": "m4^4*m2^2*c^20*z^4",
    "IIIXXIXXI": "m4^4*m2^2*c^20*z^4",
    "IIZIIZIII": "m4^2*m2*c^11*z^2",
    "IIIZIIZII": "m4^2*m2*c^11*z^2",
    "XXIIIIIII": "m4^2*m2*c^11*z^2",
    "IIIIIIIXX": "m4^2*m2*c^11*z^2",
}

# Degree-3 path counts of the d = 3 code without idle noise.
D3_IDENTITY_PATHS_DEG3 = 144336
D3_X_PATHS_DEG3 = 120260
D3_Y_PATHS_DEG3 = 95880
D3_IDENTITY_OR_Z_PATHS_DEG3 = 264596

D5_B_M5 = 16168935704
D5_A_M5 = 9919808920

# Printed gate tensors, keyed by a name; each value is
# (input wire kinds, output wire kinds, tensor text).  Wire kinds: q = qubit,
# c = classical bit.  Multi-wire labels list the wires in signature order.
GATE_TENSORS = {
    "H": ("q", "q", "e^I_I + e^X_Z + e^Z_X - e^Y_Y"),
    "S": ("q", "q", "e^I_I + e^X_Y + e^Z_Z - e^Y_X"),
    "SDG": ("q", "q", "e^I_I - e^X_Y + e^Z_Z + e^Y_X"),
    "SH": ("q", "q", "e^I_I + e^X_Z + e^Z_Y + e^Y_X"),
    "HSDG": ("q", "q", "e^I_I + e^X_Y + e^Z_X + e^Y_Z"),
    "X": ("q", "q", "e^I_I + e^X_X - e^Y_Y - e^Z_Z"),
    "Y": ("q", "q", "e^I_I - e^X_X + e^Y_Y - e^Z_Z"),
    "Z": ("q", "q", "e^I_I - e^X_X - e^Y_Y + e^Z_Z"),
    "CNOT": (
        "qq",
        "qq",
        "e^II_II + e^IX_IX + e^IY_ZY + e^IZ_ZZ + e^XI_XX + e^XX_XI + e^XY_YZ - e^XZ_YY"
        " + e^YI_YX + e^YX_YI - e^YY_XZ + e^YZ_XY + e^ZI_ZI + e^ZX_ZX + e^ZY_IY + e^ZZ_IZ",
    ),
    "prep +": ("", "q", "e^-_I + e^-_X"),
    "prep -": ("", "q", "e^-_I - e^-_X"),
    "prep +i": ("", "q", "e^-_I + e^-_Y"),
    "prep -i": ("", "q", "e^-_I - e^-_Y"),
    "prep 0": ("", "q", "e^-_I + e^-_Z"),
    "prep 1": ("", "q", "e^-_I - e^-_Z"),
    "prep bell": ("", "qq", "e^-_II + e^-_XX - e^-_YY + e^-_ZZ"),
    "MD X": ("q", "c", "e^I_I + e^X_Z"),
    "MD Y": ("q", "c", "e^I_I + e^Y_Z"),
    "MD Z": ("q", "c", "e^I_I + e^Z_Z"),
    # projective measurements print the qubit before the outcome bit
    "MP Z": ("q", "qc", "e^I_II + e^Z_ZI + e^I_ZZ + e^Z_IZ"),
    "MP X": ("q", "qc", "e^I_II + e^X_XI + e^I_XZ + e^X_IZ"),
    # printed with e^X_IZ; the only consistent entry for an outcome-flipped I is e^Y_IZ
    "MP Y": ("q", "qc", "e^I_II + e^Y_YI + e^I_YZ + e^Y_IZ"),
    "cntl-Z": ("cq", "q", "e^II_I + e^ZX_X + e^ZY_Y + e^IZ_Z"),
    "cntl-X": ("cq", "q", "e^II_I + e^IX_X + e^ZY_Y + e^ZZ_Z"),
    "identity": ("c", "c", "e^I_I + e^Z_Z"),
    "not": ("c", "c", "e^I_I - e^Z_Z"),
    "xor": ("cc", "c", "e^II_I + e^ZZ_Z"),
    "and": ("cc", "c", "e^II_I + 1/2*e^II_Z + 1/2*e^IZ_Z + 1/2*e^ZI_Z - 1/2*e^ZZ_Z"),
    "or": ("cc", "c", "e^II_I - 1/2*e^II_Z + 1/2*e^IZ_Z + 1/2*e^ZI_Z + 1/2*e^ZZ_Z"),
    "mux": ("ccc", "c", "e^III_I + 1/2*e^IIZ_Z + 1/2*e^IZI_Z - 1/2*e^ZIZ_Z + 1/2*e^ZZI_Z"),
}

# T gate: e^I_I + e^Z_Z + (e^X_X + e^X_Y - e^Y_X + e^Y_Y)/sqrt(2), as (in, out, value).
T_GATE = [("I", "I", 1.0), ("Z", "Z", 1.0), ("X", "X", 0.5 ** 0.5), ("X", "Y", 0.5 ** 0.5), ("Y", "X", -(0.5 ** 0.5)), ("Y", "Y", 0.5 ** 0.5)]

# Intermediate stage of the projective-Z pipeline: prep |0> on a fresh qubit then CNOT.
MP_Z_AFTER_CNOT = "e^I_II + e^X_XX + e^Y_YX + e^Z_ZI + e^I_ZZ - e^X_YY + e^Y_XY + e^Z_IZ"

UNIFORM_PAULI_TRACE = "(w + 3*z)e^I_I + (w - z)e^X_X + (w - z)e^Y_Y + (w - z)e^Z_Z"
COHERENT_S_TRACE = "(w + 3*z)e^I_I + (w - z)e^X_X + (w - z)e^Y_Y + (w + 3*z)e^Z_Z"
