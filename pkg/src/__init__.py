"""Pacote principal do otimizador de posicionamento de armazenamento (GSP)."""
