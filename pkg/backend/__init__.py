# Lamsym Backend Package
