# Backend Tests
