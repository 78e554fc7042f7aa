group a
relator a^2
eta e a
