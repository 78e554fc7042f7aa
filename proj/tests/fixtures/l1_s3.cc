group r s
relator r^3
relator s^2
relator s r s r
eta e r
